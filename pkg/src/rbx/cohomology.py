"""Cochain complexes of a Rota-Baxter Lie algebra with module coefficients.

Three differentials act here: the Chevalley-Eilenberg differential of the
underlying module, a twisted differential built from both operators, and the
combined differential on pairs (degree-n cochain, degree-(n-1) cochain).  The
fundamental oracle for all three is that composing each with itself gives
exactly zero, which the test suite checks on randomized inputs.

Multilinear alternating cochains store one coefficient vector per strictly
increasing basis tuple; evaluation on arbitrary vectors expands multilinearly
with antisymmetric sign bookkeeping.  Flattened coordinates are ordered
tuple-major (tuples lexicographic) and coefficient-coordinate-minor, one
shared layout for every rank computation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Mapping, Optional

from .errors import DimensionMismatch, InvalidStructure
from .linalg import (
    Field,
    Matrix,
    Vector,
    operator_matrix,
    unit_vector,
    vec_add,
    vec_is_zero,
    vec_neg,
    vec_scale,
    vec_sub,
    vec_to_matrix_cols,
)
from .reps import Representation


def _sort_with_sign(indices):
    """(sorted tuple, sign) of a permutation; sign 0 when an index repeats."""
    arr = list(indices)
    sign = 1
    for i in range(1, len(arr)):
        j = i
        while j > 0 and arr[j - 1] > arr[j]:
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(arr, arr[1:]):
        if a == b:
            return tuple(arr), 0
    return tuple(arr), sign


@dataclass(frozen=True)
class Cochain:
    """Alternating multilinear map from degree-many algebra slots to coefficients.

    ``items`` holds (strictly increasing index tuple, coefficient vector)
    pairs, sorted by tuple, with zero vectors dropped; a degree-0 cochain is a
    single vector keyed by the empty tuple.
    """

    field: Field
    gdim: int
    hdim: int
    degree: int
    items: tuple

    @staticmethod
    def build(field: Field, gdim: int, hdim: int, degree: int, values: Mapping) -> "Cochain":
        if degree < 0:
            raise InvalidStructure("cochain degree must be nonnegative")
        cleaned = {}
        for key, vec in values.items():
            key = tuple(key)
            if len(key) != degree or any(not (0 <= i < gdim) for i in key):
                raise InvalidStructure(f"bad index tuple {key} for degree {degree}")
            if any(a >= b for a, b in zip(key, key[1:])):
                raise InvalidStructure(f"index tuple {key} is not strictly increasing")
            if key in cleaned:
                raise InvalidStructure(f"duplicate index tuple {key}")
            vec = tuple(field.normalize(x) for x in vec)
            if len(vec) != hdim:
                raise DimensionMismatch(f"value for {key} has length {len(vec)}, want {hdim}")
            if any(vec):
                cleaned[key] = vec
        return Cochain(field, gdim, hdim, degree,
                       tuple(sorted(cleaned.items())))

    @staticmethod
    def zero(field: Field, gdim: int, hdim: int, degree: int) -> "Cochain":
        return Cochain(field, gdim, hdim, degree, ())

    @cached_property
    def _map(self):
        return dict(self.items)

    def value(self, key) -> Vector:
        """Coefficient vector on a strictly increasing tuple."""
        return self._map.get(tuple(key), tuple(self.field.zero for _ in range(self.hdim)))

    def eval_basis(self, indices) -> Vector:
        """Value on an arbitrary basis tuple, extended antisymmetrically."""
        key, sign = _sort_with_sign(indices)
        if sign == 0:
            return tuple(self.field.zero for _ in range(self.hdim))
        v = self.value(key)
        return v if sign == 1 else vec_neg(self.field, v)

    def eval_front(self, vec: Vector, rest) -> Vector:
        """Value with the first slot an arbitrary vector and the rest basis indices."""
        acc = tuple(self.field.zero for _ in range(self.hdim))
        rest = tuple(rest)
        for k, c in enumerate(vec):
            if c:
                acc = vec_add(self.field, acc, vec_scale(self.field, c, self.eval_basis((k,) + rest)))
        return acc

    def eval_vectors(self, vectors) -> Vector:
        """Full multilinear evaluation on a list of coordinate vectors."""
        if len(vectors) != self.degree:
            raise DimensionMismatch("argument count differs from degree")
        f = self.field
        acc = tuple(f.zero for _ in range(self.hdim))
        supports = [[(k, c) for k, c in enumerate(v) if c] for v in vectors]
        for combo in itertools.product(*supports):
            coeff = f.one
            for _, c in combo:
                coeff = f.mul(coeff, c)
            term = self.eval_basis(tuple(k for k, _ in combo))
            if not vec_is_zero(term):
                acc = vec_add(f, acc, vec_scale(f, coeff, term))
        return acc

    # -- linear structure -----------------------------------------------------

    def _same_shape(self, other: "Cochain"):
        if (self.field, self.gdim, self.hdim, self.degree) != (other.field, other.gdim, other.hdim, other.degree):
            raise DimensionMismatch("cochain shapes differ")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._same_shape(other)
        keys = set(self._map) | set(other._map)
        return Cochain.build(self.field, self.gdim, self.hdim, self.degree, {
            k: vec_add(self.field, self.value(k), other.value(k)) for k in keys
        })

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._same_shape(other)
        keys = set(self._map) | set(other._map)
        return Cochain.build(self.field, self.gdim, self.hdim, self.degree, {
            k: vec_sub(self.field, self.value(k), other.value(k)) for k in keys
        })

    def __neg__(self) -> "Cochain":
        return Cochain(self.field, self.gdim, self.hdim, self.degree,
                       tuple((k, vec_neg(self.field, v)) for k, v in self.items))

    def scale(self, s) -> "Cochain":
        return Cochain.build(self.field, self.gdim, self.hdim, self.degree, {
            k: vec_scale(self.field, s, v) for k, v in self.items
        })

    def is_zero(self) -> bool:
        return not self.items

    # -- flattening ------------------------------------------------------------

    def flatten(self) -> Vector:
        out = []
        for key in itertools.combinations(range(self.gdim), self.degree):
            out.extend(self.value(key))
        return tuple(out)

    @staticmethod
    def from_flat(field: Field, gdim: int, hdim: int, degree: int, flat: Vector) -> "Cochain":
        keys = list(itertools.combinations(range(gdim), degree))
        if len(flat) != len(keys) * hdim:
            raise DimensionMismatch("flat vector length mismatch")
        values = {
            key: flat[k * hdim:(k + 1) * hdim] for k, key in enumerate(keys)
        }
        return Cochain.build(field, gdim, hdim, degree, values)


def cochain_dim(gdim: int, hdim: int, degree: int) -> int:
    return comb(gdim, degree) * hdim


@dataclass(frozen=True)
class RBCochain:
    """Pair (degree-n cochain, degree-(n-1) cochain); degree 1 has no partner."""

    f: Cochain
    theta: Optional[Cochain]

    def __post_init__(self):
        if self.f.degree < 1:
            raise InvalidStructure("combined cochains start at degree 1")
        if self.f.degree == 1:
            if self.theta is not None:
                raise InvalidStructure("degree-1 cochains carry no partner")
        else:
            if self.theta is None:
                raise InvalidStructure(f"degree-{self.f.degree} cochains need a partner")
            if self.theta.degree != self.f.degree - 1:
                raise DimensionMismatch("partner degree must be one lower")
            if (self.theta.field, self.theta.gdim, self.theta.hdim) != (self.f.field, self.f.gdim, self.f.hdim):
                raise DimensionMismatch("components live over different spaces")

    @property
    def degree(self) -> int:
        return self.f.degree

    @staticmethod
    def zero(field: Field, gdim: int, hdim: int, degree: int) -> "RBCochain":
        theta = Cochain.zero(field, gdim, hdim, degree - 1) if degree >= 2 else None
        return RBCochain(Cochain.zero(field, gdim, hdim, degree), theta)

    def __add__(self, other: "RBCochain") -> "RBCochain":
        theta = self.theta + other.theta if self.theta is not None else None
        return RBCochain(self.f + other.f, theta)

    def __sub__(self, other: "RBCochain") -> "RBCochain":
        theta = self.theta - other.theta if self.theta is not None else None
        return RBCochain(self.f - other.f, theta)

    def is_zero(self) -> bool:
        return self.f.is_zero() and (self.theta is None or self.theta.is_zero())

    def flatten(self) -> Vector:
        flat = self.f.flatten()
        if self.theta is not None:
            flat = flat + self.theta.flatten()
        return flat

    @staticmethod
    def from_flat(field: Field, gdim: int, hdim: int, degree: int, flat: Vector) -> "RBCochain":
        head = cochain_dim(gdim, hdim, degree)
        f = Cochain.from_flat(field, gdim, hdim, degree, flat[:head])
        theta = None
        if degree >= 2:
            theta = Cochain.from_flat(field, gdim, hdim, degree - 1, flat[head:])
        elif len(flat) != head:
            raise DimensionMismatch("flat vector length mismatch")
        return RBCochain(f, theta)


def rb_cochain_dim(gdim: int, hdim: int, degree: int) -> int:
    head = cochain_dim(gdim, hdim, degree)
    return head + (cochain_dim(gdim, hdim, degree - 1) if degree >= 2 else 0)


# ---------------------------------------------------------------------------
# differentials
# ---------------------------------------------------------------------------

def ce_differential(r: Representation, f: Cochain) -> Cochain:
    """Chevalley-Eilenberg differential of the underlying module."""
    _check_over(r, f)
    fld = r.field
    n = f.degree
    values = {}
    for tup in itertools.combinations(range(r.gdim), n + 1):
        acc = tuple(fld.zero for _ in range(r.hdim))
        for a, idx in enumerate(tup):
            rest = tup[:a] + tup[a + 1:]
            fv = f.value(rest)
            if any(fv):
                term = r.action[idx].apply(fv)
                acc = vec_add(fld, acc, term if a % 2 == 0 else vec_neg(fld, term))
        for a in range(n + 1):
            for b in range(a + 1, n + 1):
                v = r.base.lie.bracket_basis(tup[a], tup[b])
                if vec_is_zero(v):
                    continue
                rest = tuple(x for k, x in enumerate(tup) if k not in (a, b))
                term = f.eval_front(v, rest)
                acc = vec_add(fld, acc, term if (a + b) % 2 == 0 else vec_neg(fld, term))
        values[tup] = acc
    return Cochain.build(fld, r.gdim, r.hdim, n + 1, values)


def rb_twisted_differential(r: Representation, f: Cochain) -> Cochain:
    """Differential twisted by the two operators.

    Vertical terms apply the action of the operator image minus the operator
    composed with the plain action; horizontal terms insert the operator into
    either slot of the bracket.
    """
    _check_over(r, f)
    fld = r.field
    n = f.degree
    t = r.base.op
    s = r.s_op
    tcols = [t.col(i) for i in range(r.gdim)]
    action_t = [r.action_of(tcols[i]) for i in range(r.gdim)]
    values = {}
    for tup in itertools.combinations(range(r.gdim), n + 1):
        acc = tuple(fld.zero for _ in range(r.hdim))
        for a, idx in enumerate(tup):
            rest = tup[:a] + tup[a + 1:]
            fv = f.value(rest)
            if any(fv):
                term = vec_sub(fld, action_t[idx].apply(fv), s.apply(r.action[idx].apply(fv)))
                acc = vec_add(fld, acc, term if a % 2 == 0 else vec_neg(fld, term))
        for a in range(n + 1):
            for b in range(a + 1, n + 1):
                i, j = tup[a], tup[b]
                v = vec_add(
                    fld,
                    r.base.lie.bracket(tcols[i], unit_vector(fld, r.gdim, j)),
                    r.base.lie.bracket(unit_vector(fld, r.gdim, i), tcols[j]),
                )
                if vec_is_zero(v):
                    continue
                rest = tuple(x for k, x in enumerate(tup) if k not in (a, b))
                term = f.eval_front(v, rest)
                acc = vec_add(fld, acc, term if (a + b) % 2 == 0 else vec_neg(fld, term))
        values[tup] = acc
    return Cochain.build(fld, r.gdim, r.hdim, n + 1, values)


def rbl_differential(r: Representation, c: RBCochain) -> RBCochain:
    """Combined differential on pairs.

    First component: plain differential of the head.  Second component: twisted
    differential of the partner, plus the head precomposed with the operator in
    every slot, minus, for each slot left untouched, the coefficient operator
    applied to the head with the operator in all other slots; the whole
    correction carries the parity sign of the degree.
    """
    _check_over(r, c.f)
    fld = r.field
    n = c.degree
    t = r.base.op
    s = r.s_op
    tcols = [t.col(i) for i in range(r.gdim)]
    units = [unit_vector(fld, r.gdim, i) for i in range(r.gdim)]

    head = ce_differential(r, c.f)
    if c.theta is not None:
        tail = rb_twisted_differential(r, c.theta)
    else:
        tail = Cochain.zero(fld, r.gdim, r.hdim, n)

    sign = 1 if n % 2 == 0 else -1
    values = {}
    for tup in itertools.combinations(range(r.gdim), n):
        full = c.f.eval_vectors([tcols[i] for i in tup])
        acc = full
        for pos in range(n):
            args = [units[idx] if k == pos else tcols[idx] for k, idx in enumerate(tup)]
            acc = vec_sub(fld, acc, s.apply(c.f.eval_vectors(args)))
        if sign == -1:
            acc = vec_neg(fld, acc)
        values[tup] = acc
    correction = Cochain.build(fld, r.gdim, r.hdim, n, values)
    return RBCochain(head, tail + correction)


def _check_over(r: Representation, f: Cochain):
    if f.gdim != r.gdim or f.hdim != r.hdim or f.field != r.field:
        raise DimensionMismatch("cochain does not match the representation")


# ---------------------------------------------------------------------------
# degree-2 cohomology with representatives
# ---------------------------------------------------------------------------

def rb_basis_cochains(field: Field, gdim: int, hdim: int, degree: int):
    """Unit combined cochains in flattening order."""
    total = rb_cochain_dim(gdim, hdim, degree)
    out = []
    for k in range(total):
        flat = tuple(field.one if i == k else field.zero for i in range(total))
        out.append(RBCochain.from_flat(field, gdim, hdim, degree, flat))
    return out


def rbl_matrix(r: Representation, degree: int) -> Matrix:
    """Flattened matrix of the combined differential at the given degree."""
    domain = rb_basis_cochains(r.field, r.gdim, r.hdim, degree)
    codomain_dim = rb_cochain_dim(r.gdim, r.hdim, degree + 1)
    cols = [rbl_differential(r, b).flatten() for b in domain]
    return Matrix.from_cols(r.field, cols, rows=codomain_dim)


@dataclass(frozen=True)
class SecondCohomology:
    zdim: int
    bdim: int
    hdim: int
    cocycle_basis: tuple
    coboundary_basis: tuple
    complement_reps: tuple


def second_cohomology(r: Representation) -> SecondCohomology:
    """Kernel/image data of the combined complex at degree 2, with chosen
    representatives whose classes form a basis of the quotient."""
    if not r.module_valued:
        raise InvalidStructure("cohomology needs module coefficients (zero bracket)")
    d2 = rbl_matrix(r, 2)
    d1 = rbl_matrix(r, 1)
    kernel = d2.kernel_basis()
    zdim = len(kernel)

    _, pivots = _rref_cols(d1)
    coboundaries = [d1.col(c) for c in pivots]
    bdim = len(coboundaries)
    hdim = zdim - bdim

    chosen = []
    span = list(coboundaries)
    current_rank = bdim
    for z in kernel:
        if len(chosen) == hdim:
            break
        candidate = Matrix.from_cols(r.field, span + [z], rows=d1.rows)
        rk = candidate.rank()
        if rk > current_rank:
            span.append(z)
            chosen.append(z)
            current_rank = rk
    if len(chosen) != hdim:
        raise RuntimeError("failed to complete a basis of the quotient")

    unflat = lambda v: RBCochain.from_flat(r.field, r.gdim, r.hdim, 2, v)
    return SecondCohomology(
        zdim=zdim,
        bdim=bdim,
        hdim=hdim,
        cocycle_basis=tuple(unflat(v) for v in kernel),
        coboundary_basis=tuple(unflat(v) for v in coboundaries),
        complement_reps=tuple(unflat(v) for v in chosen),
    )


def _rref_cols(m: Matrix):
    from .linalg import _rref

    return _rref(m.field, [list(row) for row in m.entries], m.cols)


def derivation_space(r: Representation) -> list:
    """Basis of the degree-1 kernel of the combined differential, as matrices.

    Members satisfy both the module derivation identity and the operator
    intertwining relation on all basis instantiations.
    """
    d1 = rbl_matrix(r, 1)
    return [vec_to_matrix_cols(r.field, v, r.hdim, r.gdim) for v in d1.kernel_basis()]


def linear_map_to_cochain(m: Matrix, gdim: int) -> Cochain:
    """Degree-1 cochain with the columns of a matrix as its values."""
    if m.cols != gdim:
        raise DimensionMismatch("column count does not match the algebra dimension")
    return Cochain.build(m.field, gdim, m.rows, 1, {
        (i,): m.col(i) for i in range(gdim)
    })


def cochain_to_linear_map(c: Cochain) -> Matrix:
    if c.degree != 1:
        raise DimensionMismatch("only degree-1 cochains are matrices")
    return Matrix.from_cols(c.field, [c.value((i,)) for i in range(c.gdim)], rows=c.hdim)
