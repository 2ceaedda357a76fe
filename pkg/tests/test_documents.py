import tomllib
from fractions import Fraction

import pytest

from detcomplex import __version__
from detcomplex.core.certifier import certify_lower_bound
from detcomplex.core.documents import (
    SCHEMA_VERSION, certificate_from_toml, certificate_to_toml, detrep_from_toml, detrep_to_toml,
    format_matrix, load_document, parse_matrix, report_to_toml,
)
from detcomplex.core.errors import ParseError, ShapeError
from detcomplex.core.poset_detrep import boolean_lattice, build_for_family, family_reference, grenet_build, verify_detrep
from detcomplex.types.family import FamilySpec
from detcomplex.types.matrix import RatMatrix


#
# Matrices
#

def test_parse_matrix():
    """Rows of rationals, comments and blank lines ignored"""
    assert parse_matrix("1 2\n3 4") == RatMatrix([[1, 2], [3, 4]])
    assert parse_matrix("# point\n\n1/2   -3\n\t0 4  # last\n") == RatMatrix([["1/2", -3], [0, 4]])


def test_parse_matrix_with_shape():
    """The hoperm zero row parses against the expected shape"""
    m = parse_matrix("1 1 1 1\n1 -3 1 1", (2, 4))
    assert m.row(1) == (1, -3, 1, 1)
    with pytest.raises(ShapeError):
        parse_matrix("1 2\n3 4", (2, 4))


def test_parse_matrix_errors():
    """Malformed entries are located, ragged rows refused"""
    with pytest.raises(ParseError) as e:
        parse_matrix("1/2 x")
    assert (e.value.line, e.value.column) == (1, 5)
    with pytest.raises(ParseError):
        parse_matrix("1 2\n3")
    with pytest.raises(ParseError):
        parse_matrix("1/0")


def test_format_matrix():
    """One row per line, single spaces, exact rationals"""
    m = RatMatrix([[1, "-1/2"], [0, 3]])
    assert format_matrix(m) == "1 -1/2\n0 3\n"
    assert parse_matrix(format_matrix(m)) == m


#
# Documents
#

def test_detrep_document():
    """A representation survives its document"""
    rep = build_for_family(FamilySpec.mperm((2, 1)))
    text = detrep_to_toml(rep)
    data = tomllib.loads(text)
    assert data['schema'] == SCHEMA_VERSION
    assert data['tool_version'] == __version__
    assert data['kind'] == 'detrep'
    assert data['size'] == 5
    assert data['family'] == {'kind': 'mperm', 'n': 2, 'composition': [2, 1]}

    back = detrep_from_toml(text)
    assert back.matrix == rep.matrix
    assert back.spec == rep.spec
    assert back.vertices == rep.vertices
    assert (back.chain_degree, back.cycle_length, back.sign_fixed) == (3, 3, False)


def test_detrep_document_without_family():
    """Posets compiled without a family keep no [family] section"""
    rep = grenet_build(boolean_lattice(2))
    back = detrep_from_toml(detrep_to_toml(rep))
    assert back.spec is None
    assert back.matrix == rep.matrix
    assert back.sign_fixed


def test_detrep_document_errors():
    """Declared size must match the matrix"""
    text = detrep_to_toml(build_for_family(FamilySpec.perm(2))).replace("size = 3", "size = 4")
    with pytest.raises(ShapeError):
        detrep_from_toml(text)
    with pytest.raises(ParseError):
        detrep_from_toml('schema = "1"\nkind = "detrep"\n')


@pytest.mark.parametrize("spec", [FamilySpec.hoperm(3), FamilySpec.perm(3), FamilySpec.mperm((1, 3))])
def test_certificate_document(spec):
    """Every certificate field is read back exactly"""
    cert = certify_lower_bound(spec)
    text = certificate_to_toml(cert)
    if spec.is_hoperm:
        assert 'lower_bound = "9/2"' in text
    assert certificate_from_toml(text) == cert


@pytest.mark.parametrize("old, new", [
    ('"x[1,1]"', '"x[0,1]"'),
    ('"x[1,2]"', '"x[1,0]"'),
    ("rank = 9", 'rank = "9x"'),
    ("upper_bound = 7", "upper_bound = [7]"),
])
def test_malformed_certificate_fields(old, new):
    """Bad variables and numbers in a certificate are parse errors"""
    text = certificate_to_toml(certify_lower_bound(FamilySpec.perm(3)))
    assert old in text
    with pytest.raises(ParseError):
        certificate_from_toml(text.replace(old, new))


def test_load_document_checks():
    """Schema and kind are checked"""
    with pytest.raises(ParseError):
        load_document('schema = "2"\nkind = "detrep"\n', 'detrep')
    with pytest.raises(ParseError):
        load_document('schema = "1"\nkind = "certificate"\n', 'detrep')
    with pytest.raises(ParseError):
        load_document('schema = ', 'detrep')


def test_report_document():
    """Reports carry the seed; failures carry the witness point"""
    spec = FamilySpec.perm(2)
    rep = build_for_family(spec)
    report = verify_detrep(rep, family_reference(spec), trials=4, seed=5)
    data = tomllib.loads(report_to_toml(report))
    assert (data['seed'], data['trials'], data['result']) == (5, 4, 'pass')
    assert 'witness' not in data

    failing = verify_detrep(rep, lambda point: Fraction(1, 2), trials=2, seed=5)
    data = tomllib.loads(report_to_toml(failing))
    assert data['result'] == 'fail'
    assert data['witness']['trial'] == 0
    assert set(data['witness']['point']) == {'x[1,1]', 'x[1,2]', 'x[2,1]', 'x[2,2]'}
