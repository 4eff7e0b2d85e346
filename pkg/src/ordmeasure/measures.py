"""Measurable spaces on finite ground sets and cone-valued measures.

Subsets of the ground set {0, .., n-1} are encoded as bitmasks.  A family
closed under complements and pairwise unions on a finite ground set is
automatically a sigma-algebra; its atoms (minimal nonempty members) form a
partition, and a measure is stored by its atom values alone, since finite
additivity determines it everywhere else.  Values live in the extended
positive cone of a backend; the value on a set is the sum of its atoms'
values, with the point at infinity absorbing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

from . import extended, spaces
from .errors import (
    CertificationError,
    DimensionLimitError,
    HypothesisError,
    ValidationError,
)
from .extended import ExtElement, ext_add, ext_leq, ext_sum, ext_zero
from .rationals import format_rational
from .reports import CheckResult, fails, holds
from .sequences import SequenceSpec, detect_cycle, detect_stable_tail
from .spaces import Element, SpaceDescriptor, SpaceKind

MAX_GROUND_SIZE = 16


def full_mask(ground_size: int) -> int:
    return (1 << ground_size) - 1


def mask_to_points(mask: int) -> List[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def points_to_mask(points: Iterable[int]) -> int:
    mask = 0
    for p in points:
        mask |= 1 << p
    return mask


@dataclass(frozen=True)
class MeasurableSpace:
    """A finite ground set with a validated sigma-algebra and its atoms."""

    ground_size: int
    sets: frozenset
    atoms: tuple  # sorted bitmasks of the minimal nonempty members

    def __contains__(self, mask: int) -> bool:
        return mask in self.sets

    def require_measurable(self, mask: int, what: str = "set"):
        if mask not in self.sets:
            raise ValidationError(
                f"{what} {sorted(mask_to_points(mask))} is not measurable",
                witness={"set": mask_to_points(mask)},
            )

    def atoms_inside(self, mask: int) -> List[int]:
        return [a for a in self.atoms if a & mask == a]

    def members(self) -> List[int]:
        return sorted(self.sets)


def _atom_partition(ground_size: int, sets: Iterable[int]) -> tuple:
    """Partition the ground set by membership signature across the family."""
    members = list(sets)
    signature: Dict[tuple, int] = {}
    for point in range(ground_size):
        sig = tuple((s >> point) & 1 for s in members)
        signature[sig] = signature.get(sig, 0) | (1 << point)
    return tuple(sorted(signature.values()))


def validate_sigma_algebra(sets: Iterable[int], ground_size: int) -> MeasurableSpace:
    """Validate a family of bitmasks as a sigma-algebra, or report a witness.

    On a finite ground set it suffices that the family contains the empty
    set and the whole set and is closed under complements and pairwise
    unions.  Closure is decided through the membership-signature partition;
    when it fails, a concrete complement or union witness is searched for.
    """
    if not 1 <= ground_size <= MAX_GROUND_SIZE:
        raise DimensionLimitError(
            f"ground size must be in 1..{MAX_GROUND_SIZE}, got {ground_size}"
        )
    family = frozenset(sets)
    full = full_mask(ground_size)
    for s in family:
        if s < 0 or s > full:
            raise ValidationError(
                f"set {s} is outside the ground set", witness={"set": s}
            )
    if 0 not in family:
        raise ValidationError("family does not contain the empty set",
                              witness={"missing": []})
    if full not in family:
        raise ValidationError("family does not contain the ground set",
                              witness={"missing": mask_to_points(full)})
    for s in family:
        if (s ^ full) not in family:
            raise ValidationError(
                f"family not closed under complement of {mask_to_points(s)}",
                witness={"complement_of": mask_to_points(s)},
            )
    atoms = _atom_partition(ground_size, family)
    # Closed under complement and union iff every union of signature blocks
    # is present (the family then *is* the algebra its atoms generate).
    nblocks = len(atoms)
    if len(family) != (1 << nblocks):
        _raise_union_witness(family)
    for combo in range(1 << nblocks):
        union = 0
        for i in range(nblocks):
            if combo >> i & 1:
                union |= atoms[i]
        if union not in family:
            _raise_union_witness(family)
    return MeasurableSpace(ground_size=ground_size, sets=family, atoms=atoms)


def _raise_union_witness(family: frozenset):
    members = sorted(family)
    for a in members:
        for b in members:
            if (a | b) not in family:
                raise ValidationError(
                    f"family not closed under union: "
                    f"{mask_to_points(a)} | {mask_to_points(b)} missing",
                    witness={"pair": [mask_to_points(a), mask_to_points(b)]},
                )
    raise ValidationError("family is not closed", witness=None)


def generate_sigma_algebra(generators: Iterable[int], ground_size: int) -> MeasurableSpace:
    """Close a generating family under complements and unions."""
    if not 1 <= ground_size <= MAX_GROUND_SIZE:
        raise DimensionLimitError(
            f"ground size must be in 1..{MAX_GROUND_SIZE}, got {ground_size}"
        )
    atoms = _atom_partition(ground_size, list(generators) + [full_mask(ground_size)])
    sets = set()
    for combo in range(1 << len(atoms)):
        union = 0
        for i in range(len(atoms)):
            if combo >> i & 1:
                union |= atoms[i]
        sets.add(union)
    return MeasurableSpace(ground_size=ground_size, sets=frozenset(sets), atoms=atoms)


def power_set_space(ground_size: int) -> MeasurableSpace:
    return generate_sigma_algebra([1 << i for i in range(ground_size)], ground_size)


class Measure:
    """An extended-positive-cone-valued measure stored on the atoms.

    On a finite algebra, additivity over the atom partition determines the
    measure; storing atom values eliminates redundant and possibly
    inconsistent input.  Atom values may be the point at infinity.
    """

    def __init__(self, space: MeasurableSpace, backend: SpaceDescriptor,
                 atom_values: Dict[int, ExtElement]):
        self.space = space
        self.backend = backend
        if set(atom_values) != set(space.atoms):
            raise ValidationError(
                "atom values must be given exactly on the atom partition",
                witness={"expected_atoms": [mask_to_points(a) for a in space.atoms]},
            )
        for atom, value in atom_values.items():
            if value.space != backend:
                raise ValidationError("atom value in the wrong backend")
            if not extended.is_ext_positive(value):
                raise ValidationError(
                    f"atom {mask_to_points(atom)} has a value outside the positive cone",
                    witness={"atom": mask_to_points(atom)},
                )
        self.atom_values = dict(atom_values)
        self._memo: Dict[int, ExtElement] = {}

    def evaluate(self, mask: int) -> ExtElement:
        """Measure of a measurable set: the sum of its atoms' values."""
        self.space.require_measurable(mask)
        if mask not in self._memo:
            parts = [self.atom_values[a] for a in self.space.atoms_inside(mask)]
            self._memo[mask] = ext_sum(parts, self.backend)
        return self._memo[mask]

    @property
    def null_mask(self) -> int:
        """Union of the null atoms; the largest null set of the algebra."""
        mask = 0
        for atom, value in self.atom_values.items():
            if value.is_finite and value.finite.is_zero():
                mask |= atom
        return mask

    def is_null_exception(self, mask: int) -> bool:
        """True when `mask` is contained in a measurable null set."""
        return mask & ~self.null_mask == 0

    def is_finite(self) -> bool:
        return self.evaluate(full_mask(self.space.ground_size)).is_finite

    def classification(self) -> dict:
        # On a finite ground set a measure is sigma-finite iff it is finite:
        # any countable cover contains a finite subcover of the atoms.
        fin = self.is_finite()
        return {
            "kind": "finite" if fin else "infinite",
            "sigma_finite": fin,
        }


def check_measure_identities(mu: Measure, name: str = "identities") -> CheckResult:
    """Exhaustive verification of the derived measure identities.

    Over all pairs of measurable sets: monotonicity under inclusion,
    modularity, sub-additivity, and subtractivity when the subtracted set
    has finite measure.  These are theorems, so any violation reported here
    indicates an implementation bug rather than bad input.
    """
    members = mu.space.members()
    violations = []
    checked = 0
    for d1 in members:
        v1 = mu.evaluate(d1)
        for d2 in members:
            v2 = mu.evaluate(d2)
            checked += 1
            if d1 & d2 == d1 and not ext_leq(v1, v2):
                violations.append({"identity": "monotonicity",
                                   "pair": [mask_to_points(d1), mask_to_points(d2)]})
            lhs = ext_add(v1, v2)
            rhs = ext_add(mu.evaluate(d1 & d2), mu.evaluate(d1 | d2))
            if lhs != rhs:
                violations.append({"identity": "modularity",
                                   "pair": [mask_to_points(d1), mask_to_points(d2)]})
            if not ext_leq(mu.evaluate(d1 | d2), lhs):
                violations.append({"identity": "sub-additivity",
                                   "pair": [mask_to_points(d1), mask_to_points(d2)]})
            if d2 & d1 == d2 and v2.is_finite:
                diff = mu.evaluate(d1 & ~d2)
                if diff != extended.ext_sub_finite(v1, v2):
                    violations.append({"identity": "subtractivity",
                                       "pair": [mask_to_points(d1), mask_to_points(d2)]})
    if violations:
        return fails(name, violations=violations, pairs_checked=checked)
    return holds(name, pairs_checked=checked,
                 classification=mu.classification())


def _set_sequence_samples(seq: SequenceSpec, horizon: Optional[int] = None) -> List[int]:
    h = horizon if horizon is not None else seq.horizon
    return [seq.term(n) for n in range(1, h + 1)]


def continuity_from_below(mu: Measure, seq: SequenceSpec,
                          horizon: Optional[int] = None) -> CheckResult:
    """Increasing sets: the supremum of the values equals the measure of the union."""
    sets = _set_sequence_samples(seq, horizon)
    for n in range(1, len(sets)):
        if sets[n - 1] & sets[n] != sets[n - 1]:
            raise CertificationError(f"set sequence not increasing at n={n}")
    union = 0
    for s in sets:
        union |= s
    values = [mu.evaluate(s) for s in sets]
    for n in range(1, len(values)):
        if not ext_leq(values[n - 1], values[n]):
            return fails("continuity_below", reason="values not increasing",
                         index=n)
    # Increasing sets on a finite ground set stabilize inside the window.
    stable = detect_stable_tail(sets)
    if stable is None and len(sets) > 1:
        raise CertificationError("set sequence did not stabilize within horizon")
    sup_of_values = values[-1]
    union_value = mu.evaluate(union)
    if sup_of_values == union_value:
        return holds("continuity_below",
                     union=mask_to_points(union),
                     value=_ext_json(union_value))
    return fails("continuity_below",
                 sup_of_values=_ext_json(sup_of_values),
                 union_value=_ext_json(union_value))


def continuity_from_above(mu: Measure, seq: SequenceSpec,
                          horizon: Optional[int] = None) -> CheckResult:
    """Decreasing sets with a finite first value: values decrease to the
    measure of the intersection.  The finiteness hypothesis is essential."""
    sets = _set_sequence_samples(seq, horizon)
    for n in range(1, len(sets)):
        if sets[n] & sets[n - 1] != sets[n]:
            raise CertificationError(f"set sequence not decreasing at n={n}")
    first = mu.evaluate(sets[0])
    if first.is_infinite:
        raise HypothesisError(
            "continuity from above requires the first set to have finite measure"
        )
    stable = detect_stable_tail(sets)
    if stable is None and len(sets) > 1:
        raise CertificationError("set sequence did not stabilize within horizon")
    intersection = full_mask(mu.space.ground_size)
    for s in sets:
        intersection &= s
    values = [mu.evaluate(s) for s in sets]
    inf_of_values = values[-1]
    inter_value = mu.evaluate(intersection)
    if inf_of_values == inter_value:
        return holds("continuity_above",
                     intersection=mask_to_points(intersection),
                     value=_ext_json(inter_value))
    return fails("continuity_above",
                 inf_of_values=_ext_json(inf_of_values),
                 intersection_value=_ext_json(inter_value))


def borel_cantelli(mu: Measure, seq: SequenceSpec, x: Optional[Element] = None,
                   horizon: Optional[int] = None) -> CheckResult:
    """Both halves of the Borel-Cantelli lemma on an eventually periodic
    sequence of sets.

    Part one applies when the partial sums of the values stay finite, which
    on an eventually periodic sequence means every set in the cycle is null;
    the limit superior set must then be null.  Part two applies when the
    union minus the limit superior set has finite measure and a uniform
    lower bound x for the values is supplied; the limit superior set must
    then carry at least x.
    """
    sets = _set_sequence_samples(seq, horizon)
    cycle = detect_cycle(sets)
    if cycle is None:
        raise CertificationError(
            "set sequence is not eventually periodic within the horizon; "
            "tail unions are not certifiable"
        )
    pre, period = cycle
    union_all = 0
    for s in sets:
        union_all |= s
    gamma = 0
    for s in sets[pre:pre + period]:
        gamma |= s  # tail unions are eventually this cycle union
    details: dict = {"limsup_set": mask_to_points(gamma)}

    cycle_values = [mu.evaluate(s) for s in sets[pre:pre + period]]
    pre_values = [mu.evaluate(s) for s in sets[:pre]]
    sums_finite = (
        all(v.is_finite for v in pre_values)
        and all(v.is_finite and v.finite.is_zero() for v in cycle_values)
    )
    if sums_finite:
        total = ext_sum(pre_values, mu.backend)
        details["partial_sum_bound"] = _ext_json(total)
        gamma_value = mu.evaluate(gamma)
        part1 = gamma_value.is_finite and gamma_value.finite.is_zero()
        details["part1"] = "holds" if part1 else "fails"
        if not part1:
            return fails("borel_cantelli", **details)
    else:
        details["part1"] = "not-applicable: partial sums not certified finite"

    if x is not None:
        rest = mu.evaluate(union_all & ~gamma)
        if not rest.is_finite:
            raise HypothesisError(
                "borel-cantelli part two requires the union minus the limsup "
                "set to have finite measure"
            )
        bound = extended.finite(x)
        for n, s in enumerate(sets, start=1):
            if not ext_leq(bound, mu.evaluate(s)):
                raise HypothesisError(
                    f"lower bound x is not below the value of set {n}"
                )
        part2 = ext_leq(bound, mu.evaluate(gamma))
        details["part2"] = "holds" if part2 else "fails"
        if not part2:
            return fails("borel_cantelli", **details)
    else:
        details["part2"] = "not-applicable: no lower bound supplied"
    return holds("borel_cantelli", **details)


def operator_measure_bridge(mu: Measure, disjoint_sets: Sequence[int],
                            name: str = "bridge") -> CheckResult:
    """Order sigma-additivity versus vector-wise evaluation for matrix backends.

    For a finite-valued measure on a matrix backend, the supremum of the
    increasing partial sums must equal the measure of the union, and for
    every standard basis vector the partial-sum applications must reach the
    union's application exactly; in finite dimension the strong operator
    topology is entrywise, so both routes are exact finite computations.
    """
    if mu.backend.kind not in (SpaceKind.ENTRYWISE_MAT, SpaceKind.LOEWNER_SYM):
        raise HypothesisError(
            "the operator bridge needs a matrix-typed backend "
            f"(got {mu.backend.describe()})"
        )
    if not mu.is_finite():
        raise HypothesisError("the operator bridge requires a finite measure")
    seen = 0
    for s in disjoint_sets:
        mu.space.require_measurable(s)
        if s & seen:
            raise ValidationError("sets are not pairwise disjoint",
                                  witness={"overlap": mask_to_points(s & seen)})
        seen |= s
    union = seen
    values = [mu.evaluate(s) for s in disjoint_sets]

    partial = ext_zero(mu.backend)
    partials = []
    for v in values:
        nxt = ext_add(partial, v)
        if not ext_leq(partial, nxt):
            return fails(name, reason="partial sums not increasing")
        partial = nxt
        partials.append(partial)
    union_value = mu.evaluate(union)
    order_ok = partial == union_value

    if mu.backend.kind is SpaceKind.LOEWNER_SYM:
        nrows = ncols = mu.backend.dim
    else:
        nrows, ncols = mu.backend.rows, mu.backend.cols
    vector_ok = True
    for j in range(ncols):
        total = [Fraction(0)] * nrows
        for v in values:
            m = v.payload()
            for i in range(nrows):
                total[i] += m.entry(i, j)
        target = union_value.payload()
        if any(total[i] != target.entry(i, j) for i in range(nrows)):
            vector_ok = False
            break
    if order_ok and vector_ok:
        return holds(name, union=mask_to_points(union),
                     partial_sums=len(partials))
    return fails(name, order_route=order_ok, vector_route=vector_ok)


def _ext_json(v: ExtElement):
    if v.is_infinite:
        return "infinity"
    return {"finite": [format_rational(c) for c in v.finite.coords]}
