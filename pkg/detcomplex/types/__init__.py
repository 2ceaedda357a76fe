from .rational import Rational, parse_rational, format_rational
from .matrix import RatMatrix
from .affine import VarId, AffineForm, AffineMatrix, Point
from .polynomial import Polynomial, Monomial
from .family import FamilyKind, FamilySpec
from .poset import Element, Cover, GradedLabeledPoset, PosetReport
from .detrep import DetRep, TrialResult, VerificationReport
from .certificate import ZeroPoint, ExpectedHessian, HessianCertificate, BlockCheck, PushforwardCheck
