"""
Graded labeled posets, the three lattice builders and the cycle-cover compiler.

A polynomial "supported on" a graded poset is the sum over saturated chains ``0 -> ... -> max``
of the product of the edge labels. Identifying the maximum with the minimum as a single vertex
``v0`` and adding unit loops everywhere else turns the Hasse diagram into a graph whose cycle
covers are exactly one chain cycle through ``v0`` plus loops, so the determinant of its weighted
adjacency matrix is the chain polynomial up to the sign ``(-1)^(L-1)`` of an ``L``-cycle.
"""
from __future__ import annotations

import random
from collections import deque
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

from . import log
from .errors import InvalidSpecError, PosetError
from .families import eval_recurrence, matrix_from_point, var_order
from ..types.affine import AffineForm, AffineMatrix, Point, VarId
from ..types.detrep import DetRep, TrialResult, VerificationReport
from ..types.family import FamilySpec
from ..types.polynomial import Polynomial
from ..types.poset import Cover, Element, GradedLabeledPoset, PosetReport

__all__ = [
    'validate_poset', 'require_valid', 'boolean_lattice', 'cube_face_lattice', 'multiset_lattice',
    'family_poset', 'eval_poset_polynomial', 'chain_polynomial', 'adjoin_top', 'grenet_build',
    'build_for_family', 'cycle_structure_ok', 'family_reference', 'verify_detrep', 'TOP_ID',
]

TOP_ID = 'top'


#
# Validation
#

def validate_poset(poset: GradedLabeledPoset) -> PosetReport:
    """
    Check the hypotheses of the compiler.

    Unique minimum of rank 0, every cover raising the rank by exactly one, every element on a
    saturated chain from the minimum, every maximal element at the declared rank. Whether a
    unique maximum exists is reported, not required.

    :return: The report; ``valid`` is false when ``problems`` is not empty
    """
    problems: list[str] = []
    ranks: dict[str, int] = {}
    for e in poset.elements:
        if e.id in ranks:
            problems.append(f"duplicate element '{e.id}'")
        elif e.rank < 0:
            problems.append(f"element '{e.id}' has negative rank {e.rank}")
        ranks[e.id] = e.rank

    seen_covers: set[tuple[str, str]] = set()
    for c in poset.covers:
        missing = [x for x in (c.lower, c.upper) if x not in ranks]
        if missing:
            problems.extend(f"cover {c.lower} -> {c.upper} uses unknown element '{x}'" for x in missing)
            continue
        if (c.lower, c.upper) in seen_covers:
            problems.append(f"duplicate cover {c.lower} -> {c.upper}")
        seen_covers.add((c.lower, c.upper))
        if ranks[c.upper] != ranks[c.lower] + 1:
            problems.append(f"cover {c.lower} -> {c.upper} goes from rank {ranks[c.lower]} "
                            f"to rank {ranks[c.upper]}, not graded")

    bottoms = [e.id for e in poset.elements if e.rank == 0]
    minimum = bottoms[0] if len(bottoms) == 1 else None
    if not bottoms:
        problems.append("no element of rank 0")
    elif len(bottoms) > 1:
        problems.append(f"{len(bottoms)} elements of rank 0 ({', '.join(bottoms)}), need a unique minimum")

    d = poset.declared_rank
    if len(ranks) == 1 or d < 1:
        problems.append("poset must have rank >= 1")

    has_lower = {c.upper for c in poset.covers if c.lower in ranks}
    has_upper = {c.lower for c in poset.covers if c.upper in ranks}
    for e in poset.elements:
        if e.rank > 0 and e.id not in has_lower:
            problems.append(f"element '{e.id}' of rank {e.rank} has no lower cover, unreachable from the minimum")
        if e.rank == 0 and e.id not in has_upper and len(ranks) > 1:
            problems.append(f"element '{e.id}' is isolated")

    maximal = [e.id for e in poset.elements if e.id not in has_upper]
    for e in poset.elements:
        if e.id in maximal and e.rank != d and e.id in has_lower:
            problems.append(f"maximal element '{e.id}' has rank {e.rank}, expected {d}")

    return PosetReport(
        valid=not problems,
        element_count=len(poset.elements),
        rank=d,
        minimum=minimum,
        unique_maximum=maximal[0] if len(maximal) == 1 and not problems else None,
        maximal=maximal,
        problems=problems,
    )


def require_valid(poset: GradedLabeledPoset) -> PosetReport:
    """
    :raises PosetError: With every problem found, if the poset is not valid
    """
    report = validate_poset(poset)
    if not report.valid:
        raise PosetError(report.problems[0], report.problems)
    return report


def _ranked(poset: GradedLabeledPoset) -> list[Element]:
    return sorted(poset.elements, key=lambda e: (e.rank, e.id))


#
# Builders
#

def _check_positive(n: int, what: str) -> None:
    if n < 1:
        raise InvalidSpecError(f"{what} needs n >= 1, got {n}")


def boolean_lattice(n: int) -> GradedLabeledPoset:
    """
    Subsets of ``[n]``; the edge ``T -> T + {j}`` is labeled ``x[|T|+1, j]``.

    Its chain polynomial is ``perm_n``.
    """
    _check_positive(n, "boolean_lattice")

    def ident(subset: Iterable[int]) -> str:
        return "{" + ",".join(map(str, subset)) + "}"

    elements = [Element(ident(s), r) for r in range(n + 1) for s in combinations(range(1, n + 1), r)]
    covers = [
        Cover(ident(s), ident(sorted(s + (j,))), AffineForm.var(VarId(r + 1, j)))
        for r in range(n) for s in combinations(range(1, n + 1), r)
        for j in range(1, n + 1) if j not in s
    ]
    return GradedLabeledPoset(tuple(elements), tuple(covers), n, f"boolean_lattice({n})")


def cube_face_lattice(n: int) -> GradedLabeledPoset:
    """
    Sign vectors ``u`` in ``{0, 1, -1}^n`` ranked by their support.

    ``u < v`` is a cover when ``v`` sets exactly one zero coordinate ``j`` of ``u`` to ``e = +-1``;
    its label is ``x[rank(v), e*j]``. The ``2^n`` full sign vectors are the maximal elements and
    the chain polynomial is ``hoperm_n``.
    """
    _check_positive(n, "cube_face_lattice")

    def ident(u: Sequence[int]) -> str:
        return "(" + ",".join("0" if x == 0 else f"{x:+d}" for x in u) + ")"

    vectors = sorted(product((0, 1, -1), repeat=n), key=lambda u: (sum(1 for x in u if x), u))
    elements = [Element(ident(u), sum(1 for x in u if x)) for u in vectors]
    covers = []
    for u in vectors:
        r = sum(1 for x in u if x)
        for j in range(n):
            if u[j] != 0:
                continue
            for e in (1, -1):
                v = u[:j] + (e,) + u[j + 1:]
                covers.append(Cover(ident(u), ident(v), AffineForm.var(VarId(r + 1, e * (j + 1)))))
    return GradedLabeledPoset(tuple(elements), tuple(covers), n, f"cube_face_lattice({n})")


def multiset_lattice(composition: Sequence[int]) -> GradedLabeledPoset:
    """
    Sub-multisets of ``{1^m1, ..., n^mn}`` as multiplicity vectors.

    Adding one copy of ``j`` to ``T`` is labeled ``x[|T|+1, j]``; the chain polynomial is
    ``mperm_m``.

    :raises InvalidSpecError: On an empty composition or a part below 1
    """
    comp = tuple(composition)
    if not comp or any(m < 1 for m in comp):
        raise InvalidSpecError(f"multiset_lattice needs positive parts, got {comp}")

    def ident(a: Sequence[int]) -> str:
        return "(" + ",".join(map(str, a)) + ")"

    vectors = sorted(product(*(range(m + 1) for m in comp)), key=lambda a: (sum(a), a))
    elements = [Element(ident(a), sum(a)) for a in vectors]
    covers = [
        Cover(ident(a), ident(a[:j] + (a[j] + 1,) + a[j + 1:]), AffineForm.var(VarId(sum(a) + 1, j + 1)))
        for a in vectors for j in range(len(comp)) if a[j] < comp[j]
    ]
    return GradedLabeledPoset(tuple(elements), tuple(covers), sum(comp),
                              f"multiset_lattice({','.join(map(str, comp))})")


def family_poset(spec: FamilySpec) -> GradedLabeledPoset:
    """The poset whose chain polynomial is the family."""
    if spec.is_hoperm:
        return cube_face_lattice(spec.n)
    if spec.all_parts_equal() and spec.composition[0] == 1:
        return boolean_lattice(spec.n)
    return multiset_lattice(spec.composition)


#
# Chain polynomial
#

def _chain_sum(poset: GradedLabeledPoset, one, weight: Callable[[AffineForm], object]):
    report = require_valid(poset)
    lower = poset.lower_covers()
    value = {}
    for e in _ranked(poset):
        if e.id == report.minimum:
            value[e.id] = one
            continue
        total = None
        for c in lower[e.id]:
            term = value[c.lower] * weight(c.label)
            total = term if total is None else total + term
        value[e.id] = total
    result = None
    for m in report.maximal:
        result = value[m] if result is None else result + value[m]
    return result


def eval_poset_polynomial(poset: GradedLabeledPoset, point: Point) -> Fraction:
    """
    Sum over saturated chains of the product of the labels at ``point``, by a pass up the ranks.

    :raises PosetError: If the poset is invalid
    :raises MissingAssignmentError: If a label uses an unassigned variable
    """
    return _chain_sum(poset, Fraction(1), lambda label: label.evaluate(point))


def chain_polynomial(poset: GradedLabeledPoset) -> Polynomial:
    """The chain sum as a symbolic polynomial."""
    return _chain_sum(poset, Polynomial.const(1), Polynomial.from_affine)


#
# Compiler
#

def adjoin_top(poset: GradedLabeledPoset) -> GradedLabeledPoset:
    """Add a formal maximum above every maximal element, with constant 1 labels."""
    report = require_valid(poset)
    ids = {e.id for e in poset.elements}
    top = TOP_ID
    while top in ids:
        top += "'"
    covers = poset.covers + tuple(Cover(m, top, AffineForm.const(1)) for m in report.maximal)
    return GradedLabeledPoset(poset.elements + (Element(top, report.rank + 1),), covers,
                              report.rank + 1, poset.name)


def grenet_build(poset: GradedLabeledPoset, spec: FamilySpec | None = None) -> DetRep:
    """
    Compile a graded labeled poset into a determinantal representation of its chain polynomial.

    The maximum is identified with the minimum as ``v0`` (a formal top is adjoined first when
    there is no unique maximum); every other vertex gets a loop of weight 1; an edge ``u -> v``
    of the Hasse diagram becomes the entry ``(u, v)``. Cycles through ``v0`` have length ``L``
    (the rank after adjunction), contributing ``(-1)^(L-1)`` times their chain product, so row 1
    is negated when ``L`` is even.

    :param poset: A valid poset
    :param spec: Family the poset represents, kept as metadata
    :return: The representation; its size is the element count after adjunction minus one
    :raises PosetError: If the poset is invalid
    """
    report = require_valid(poset)
    chain_degree = report.rank
    graph = poset
    top_adjoined = not report.has_unique_maximum
    if top_adjoined:
        graph = adjoin_top(poset)
        report = require_valid(graph)
    bottom, top = report.minimum, report.unique_maximum
    cycle_length = report.rank

    others = [e.id for e in _ranked(graph) if e.id not in (bottom, top)]
    vertices = ['v0'] + others
    index = {eid: k for k, eid in enumerate(others, start=1)}
    index[bottom] = index[top] = 0

    size = len(vertices)
    rows: list[list[AffineForm]] = [[AffineForm()] * size for _ in range(size)]
    for k in range(1, size):
        rows[k][k] = AffineForm.const(1)
    for c in graph.covers:
        i, j = index[c.lower], index[c.upper]
        rows[i][j] = rows[i][j] + c.label

    sign_fixed = cycle_length % 2 == 0
    matrix = AffineMatrix(rows)
    if sign_fixed:
        matrix = matrix.negate_row(0)
    log.info("Built determinantal representation of size %d from %s (cycle length %d%s)",
             size, poset.name or "poset", cycle_length, ", top adjoined" if top_adjoined else "")
    return DetRep(matrix=matrix, chain_degree=chain_degree, cycle_length=cycle_length,
                  sign_fixed=sign_fixed, top_adjoined=top_adjoined, vertices=tuple(vertices),
                  spec=spec, source=poset.name)


def build_for_family(spec: FamilySpec) -> DetRep:
    """Compile the family's own poset."""
    return grenet_build(family_poset(spec), spec)


def cycle_structure_ok(rep: DetRep | AffineMatrix) -> bool:
    """
    True when the graph of nonzero off-diagonal entries, with ``v0`` removed, is acyclic.

    Then every non-loop cycle passes through ``v0`` and every cycle cover is one root cycle plus
    loops.
    """
    matrix = rep.matrix if isinstance(rep, DetRep) else rep
    n = matrix.size
    indegree = [0] * n
    edges: list[list[int]] = [[] for _ in range(n)]
    for i in range(1, n):
        for j in range(1, n):
            if i != j and not matrix[i, j].is_zero():
                edges[i].append(j)
                indegree[j] += 1
    queue = deque(k for k in range(1, n) if indegree[k] == 0)
    removed = 0
    while queue:
        k = queue.popleft()
        removed += 1
        for j in edges[k]:
            indegree[j] -= 1
            if indegree[j] == 0:
                queue.append(j)
    return removed == n - 1


#
# Verification
#

def family_reference(spec: FamilySpec) -> Callable[[Point], Fraction]:
    """Reference evaluator of the family on a variable assignment."""
    return lambda point: eval_recurrence(spec, matrix_from_point(spec, point))


def verify_detrep(rep: DetRep, reference: Callable[[Point], Fraction], trials: int = 20, seed: int = 0,
                  *, variables: Sequence[VarId] | None = None, bound_factor: int = 10) -> VerificationReport:
    """
    Randomized identity check of ``det(rep) = reference``.

    Trial ``t`` draws every variable uniformly from the integers in ``[-B, B]`` with
    ``B = bound_factor * chain_degree`` using ``random.Random(f"{seed}:{t}")``, so any trial can be
    replayed on its own.

    :param rep: The representation
    :param reference: Evaluator of the expected polynomial
    :param trials: Number of random points, at least 1
    :param seed: Base seed
    :param variables: Variables to assign, by default those of ``rep.spec`` or of the matrix
    :param bound_factor: Multiplier for the sampling bound
    :return: The report with every trial; it does not raise on mismatch
    """
    if trials < 1:
        raise InvalidSpecError(f"Need at least one trial, got {trials}")
    if variables is None:
        variables = var_order(rep.spec) if rep.spec is not None else rep.matrix.variables()
    variables = sorted(set(variables) | set(rep.matrix.variables()), key=lambda v: v.sort_key)
    bound = bound_factor * max(rep.chain_degree, 1)

    report = VerificationReport(seed=seed, trials=trials, bound=bound)
    for t in range(trials):
        rng = random.Random(f"{seed}:{t}")
        point = {v: Fraction(rng.randint(-bound, bound)) for v in variables}
        result = TrialResult(t, rep.matrix.evaluate(point).det(), reference(point), point)
        report.results.append(result)
        if not result.passed:
            log.warning("Trial %d failed: det = %s, expected %s", t, result.det_value, result.reference_value)
        else:
            log.debug("Trial %d passed", t)
    log.info("Verification of size %d representation: %d/%d trials passed",
             rep.size, trials - len(report.failures), trials)
    return report
