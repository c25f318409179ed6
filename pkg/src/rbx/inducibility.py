"""Inducibility of automorphism pairs and the Wells obstruction.

Given an extension, every automorphism of the total algebra that preserves the
embedded ideal restricts to the ideal and descends to the quotient; the map
``tau`` records the two induced automorphisms.  A pair is inducible when it
lies in the image of ``tau``, which happens exactly when a linear witness
exists (verify_inducibility_witness) and exactly when the pair-transformed
twisting triple is equivalent to the original one (wells_is_trivial).  Over a
prime field the induced exact sequences are verified by full enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetExceeded, InvalidStructure
from .cohomology import Cochain
from .liealg import enumerate_rb_automorphisms, is_rb_automorphism
from .linalg import (
    DEFAULT_BUDGET,
    Matrix,
    solve,
    vec_add,
    vec_is_zero,
    vec_sub,
)
from .nonabelian import (
    Extension,
    NonAbelianCocycle,
    canonical_section,
    extract_cocycle,
    h_component_map,
    is_section,
    solve_cocycle_equivalence,
    validate_cocycle,
)
from .results import CheckReport, EquivalenceResult, InducibilityResult, Verdict


@dataclass(frozen=True)
class AutomorphismPair:
    """An automorphism of the coefficient algebra paired with one of the quotient."""

    beta: Matrix
    alpha: Matrix

    def compose(self, other: "AutomorphismPair") -> "AutomorphismPair":
        return AutomorphismPair(self.beta @ other.beta, self.alpha @ other.alpha)

    def inverse(self) -> "AutomorphismPair":
        return AutomorphismPair(self.beta.inverse(), self.alpha.inverse())

    @property
    def is_identity(self) -> bool:
        return self.beta.is_identity() and self.alpha.is_identity()


def validate_pair(g, h, pair: AutomorphismPair) -> bool:
    return is_rb_automorphism(h, pair.beta) and is_rb_automorphism(g, pair.alpha)


def _require_pair(g, h, pair: AutomorphismPair):
    if not is_rb_automorphism(h, pair.beta):
        raise InvalidStructure("beta is not an automorphism of the coefficient algebra")
    if not is_rb_automorphism(g, pair.alpha):
        raise InvalidStructure("alpha is not an automorphism of the quotient algebra")


# ---------------------------------------------------------------------------
# tau and the ideal-preserving automorphism group
# ---------------------------------------------------------------------------

def preserves_embedded_ideal(x: Extension, gamma: Matrix) -> bool:
    return all(
        solve(x.i, (gamma @ x.i).col(b)) is not None
        for b in range(x.h.dim)
    )


def tau(x: Extension, gamma: Matrix, section: Matrix = None) -> AutomorphismPair:
    """Restriction to the ideal and descent to the quotient of an automorphism.

    The quotient component is computed through a section but does not depend
    on which one; both components are RB-automorphisms of their algebras.
    """
    if not is_rb_automorphism(x.e, gamma):
        raise InvalidStructure("not an automorphism of the total algebra")
    f = x.e.field
    beta_cols = []
    moved = gamma @ x.i
    for b in range(x.h.dim):
        sol = solve(x.i, moved.col(b))
        if sol is None:
            raise InvalidStructure("automorphism does not preserve the embedded ideal")
        beta_cols.append(sol[0])
    beta = Matrix.from_cols(f, beta_cols, rows=x.h.dim)
    s = section if section is not None else canonical_section(x)
    if not is_section(x, s):
        raise InvalidStructure("not a section of the projection")
    alpha = x.p @ gamma @ s
    pair = AutomorphismPair(beta, alpha)
    if not validate_pair(x.g, x.h, pair):
        raise RuntimeError("internal error: induced pair failed automorphism validation")
    return pair


def aut_h_subgroup(x: Extension, budget: int = DEFAULT_BUDGET) -> list:
    """All automorphisms of the total algebra preserving the embedded ideal."""
    return [
        gamma for gamma in enumerate_rb_automorphisms(x.e, budget=budget)
        if preserves_embedded_ideal(x, gamma)
    ]


# ---------------------------------------------------------------------------
# transformed cocycles and witnesses
# ---------------------------------------------------------------------------

def transform_cocycle(c: NonAbelianCocycle, pair: AutomorphismPair) -> NonAbelianCocycle:
    """Push a twisting triple through an automorphism pair.

    chi and phi are conjugated through beta and the inverse of alpha; psi is
    conjugated by beta on top of the alpha-twist.  The result is always a
    valid triple again.
    """
    _require_pair(c.g, c.h, pair)
    f = c.g.field
    n = c.g.dim
    alpha_inv = pair.alpha.inverse()
    beta_inv = pair.beta.inverse()
    values = {}
    for i in range(n):
        for j in range(i + 1, n):
            values[(i, j)] = pair.beta.apply(
                c.chi.eval_vectors([alpha_inv.col(i), alpha_inv.col(j)])
            )
    chi_t = Cochain.build(f, n, c.h.dim, 2, values)
    psi_t = tuple(pair.beta @ c.psi_of(alpha_inv.col(i)) @ beta_inv for i in range(n))
    phi_t = pair.beta @ c.phi @ alpha_inv
    out = NonAbelianCocycle(g=c.g, h=c.h, chi=chi_t, psi=psi_t, phi=phi_t)
    report = validate_cocycle(out)
    if not report.ok:
        raise RuntimeError(f"internal error: transformed triple invalid: {report.first_failure}")
    return out


def _witness_failure(c: NonAbelianCocycle, pair: AutomorphismPair, lam: Matrix):
    """First violated witness identity ("I", "II", "III"), or None."""
    f = c.g.field
    n = c.g.dim
    beta, alpha = pair.beta, pair.alpha
    ad_h = lambda v: c.h.lie.ad(v)
    psi_alpha = [c.psi_of(alpha.col(i)) for i in range(n)]
    for i in range(n):
        if beta @ c.psi[i] - psi_alpha[i] @ beta != ad_h(lam.col(i)) @ beta:
            return "I"
    for i in range(n):
        for j in range(i + 1, n):
            lhs = vec_sub(
                f,
                beta.apply(c.chi.value((i, j))),
                c.chi.eval_vectors([alpha.col(i), alpha.col(j)]),
            )
            rhs = psi_alpha[i].apply(lam.col(j))
            rhs = vec_sub(f, rhs, psi_alpha[j].apply(lam.col(i)))
            rhs = vec_sub(f, rhs, lam.apply(c.g.lie.bracket_basis(i, j)))
            rhs = vec_add(f, rhs, c.h.lie.bracket(lam.col(i), lam.col(j)))
            if lhs != rhs:
                return "II"
    if beta @ c.phi - c.phi @ alpha != c.h.op @ lam - lam @ c.g.op:
        return "III"
    return None


def verify_inducibility_witness(x: Extension, s: Matrix, pair: AutomorphismPair,
                                lam: Matrix) -> bool:
    """Check the three witness identities for the triple extracted along s."""
    _require_pair(x.g, x.h, pair)
    c = extract_cocycle(x, s)
    return _witness_failure(c, pair, lam) is None


def lift_automorphism(x: Extension, s: Matrix, pair: AutomorphismPair, lam: Matrix) -> Matrix:
    """Assemble the total-algebra automorphism determined by a passing witness.

    On the decomposition e = (image of i) + (image of s) the lift acts by beta
    on the ideal part and by the witness-shifted section on the quotient part;
    the result preserves the ideal and induces exactly the given pair.
    """
    c = extract_cocycle(x, s)
    failure = _witness_failure(c, pair, lam)
    if failure is not None:
        raise InvalidStructure(f"witness fails condition ({failure})")
    q = h_component_map(x, s)
    gamma = x.i @ (pair.beta @ q + lam @ x.p) + s @ pair.alpha @ x.p
    if not is_rb_automorphism(x.e, gamma) or not preserves_embedded_ideal(x, gamma):
        raise RuntimeError("internal error: lift is not an ideal-preserving automorphism")
    induced = tau(x, gamma, s)
    if induced.beta != pair.beta or induced.alpha != pair.alpha:
        raise RuntimeError("internal error: lift induces the wrong pair")
    return gamma


def decide_inducible(x: Extension, pair: AutomorphismPair,
                     budget: int = DEFAULT_BUDGET) -> InducibilityResult:
    """Is the pair induced by an ideal-preserving automorphism of the total algebra?

    Decided through equivalence of the pair-transformed triple with the
    original one; a positive answer returns a verified lift.
    """
    _require_pair(x.g, x.h, pair)
    s = canonical_section(x)
    c = extract_cocycle(x, s)
    transformed = transform_cocycle(c, pair)
    res = solve_cocycle_equivalence(transformed, c, budget=budget)
    if res.verdict is Verdict.YES:
        lam = res.phi @ pair.alpha
        gamma = lift_automorphism(x, s, pair, lam)
        return InducibilityResult(Verdict.YES, gamma=gamma)
    return InducibilityResult(res.verdict, failing_condition=res.failing_condition,
                              detail=res.detail)


# ---------------------------------------------------------------------------
# Wells obstruction
# ---------------------------------------------------------------------------

def wells_is_trivial(x: Extension, pair: AutomorphismPair, budget: int = DEFAULT_BUDGET,
                     section: Matrix = None) -> EquivalenceResult:
    """Triviality of the obstruction class of a pair (YES means inducible).

    The verdict does not depend on the chosen section.
    """
    _require_pair(x.g, x.h, pair)
    s = section if section is not None else canonical_section(x)
    c = extract_cocycle(x, s)
    transformed = transform_cocycle(c, pair)
    return solve_cocycle_equivalence(transformed, c, budget=budget)


def wells_restricted_g(x: Extension, alpha: Matrix, budget: int = DEFAULT_BUDGET,
                       section: Matrix = None) -> EquivalenceResult:
    """Obstruction of (identity, alpha): lifting alpha while fixing the ideal pointwise."""
    pair = AutomorphismPair(Matrix.identity(x.h.field, x.h.dim), alpha)
    return wells_is_trivial(x, pair, budget=budget, section=section)


def wells_restricted_h(x: Extension, beta: Matrix, budget: int = DEFAULT_BUDGET,
                       section: Matrix = None) -> EquivalenceResult:
    """Obstruction of (beta, identity): extending beta while inducing identity on the quotient."""
    pair = AutomorphismPair(beta, Matrix.identity(x.g.field, x.g.dim))
    return wells_is_trivial(x, pair, budget=budget, section=section)


# ---------------------------------------------------------------------------
# exactness of the induced sequences, by enumeration
# ---------------------------------------------------------------------------

def check_wells_exactness(x: Extension, budget: int = DEFAULT_BUDGET) -> CheckReport:
    """Verify the three exact sequences around tau on an enumerable extension.

    Enumerates the ideal-preserving automorphism group and both component
    automorphism groups over a prime field, computes tau and the obstruction
    verdict of every pair, and asserts kernel/image identifications plus the
    coset-counting identity.
    """
    if x.e.field.modulus is None:
        raise InvalidStructure("exactness checks need a prime field")
    s = canonical_section(x)
    c = extract_cocycle(x, s)

    gammas = aut_h_subgroup(x, budget=budget)
    taus = [tau(x, gamma, s) for gamma in gammas]
    aut_h_alg = enumerate_rb_automorphisms(x.h, budget=budget)
    aut_g_alg = enumerate_rb_automorphisms(x.g, budget=budget)

    im_tau = set(taus)
    ker_tau = [gamma for gamma, t in zip(gammas, taus) if t.is_identity]
    fixing_ideal = [gamma for gamma, t in zip(gammas, taus) if t.beta.is_identity()]
    fixing_quotient = [gamma for gamma, t in zip(gammas, taus) if t.alpha.is_identity()]

    def trivial(pair: AutomorphismPair) -> bool:
        res = solve_cocycle_equivalence(transform_cocycle(c, pair), c, budget=budget)
        if res.verdict is Verdict.UNDECIDED:
            raise RuntimeError("unexpected undecided verdict over a prime field")
        return res.verdict is Verdict.YES

    trivial_pairs = {
        pair
        for beta in aut_h_alg
        for alpha in aut_g_alg
        if trivial(pair := AutomorphismPair(beta, alpha))
    }

    im_tau1 = {t.alpha for t in taus if t.beta.is_identity()}
    im_tau2 = {t.beta for t in taus if t.alpha.is_identity()}
    wells_g_trivial = {alpha for alpha in aut_g_alg
                       if AutomorphismPair(Matrix.identity(x.h.field, x.h.dim), alpha) in trivial_pairs}
    wells_h_trivial = {beta for beta in aut_h_alg
                       if AutomorphismPair(beta, Matrix.identity(x.g.field, x.g.dim)) in trivial_pairs}

    ker_tau1 = [gamma for gamma, t in zip(gammas, taus) if t.beta.is_identity() and t.is_identity]
    ker_tau2 = [gamma for gamma, t in zip(gammas, taus) if t.alpha.is_identity() and t.is_identity]

    hom_ok = True
    lookup = dict(zip(gammas, taus))
    for g1 in gammas:
        for g2 in gammas:
            if lookup[g1 @ g2] != lookup[g1].compose(lookup[g2]):
                hom_ok = False
                break
        if not hom_ok:
            break

    assertions = (
        ("tau-homomorphism", hom_ok, "tau(g1 g2) = tau(g1) tau(g2) on the full group"),
        ("im-tau-matches-wells-trivial", im_tau == trivial_pairs,
         f"|im tau| = {len(im_tau)}, |trivial pairs| = {len(trivial_pairs)}"),
        ("ker-tau1-is-joint-kernel", set(ker_tau1) == set(ker_tau),
         "kernel of the ideal-fixing restriction equals the joint kernel"),
        ("ker-tau2-is-joint-kernel", set(ker_tau2) == set(ker_tau),
         "kernel of the quotient-fixing restriction equals the joint kernel"),
        ("im-tau1-matches-wells-g-trivial", im_tau1 == wells_g_trivial,
         f"|im tau1| = {len(im_tau1)}, |trivial quotient side| = {len(wells_g_trivial)}"),
        ("im-tau2-matches-wells-h-trivial", im_tau2 == wells_h_trivial,
         f"|im tau2| = {len(im_tau2)}, |trivial coefficient side| = {len(wells_h_trivial)}"),
        ("coset-counting", len(im_tau) * len(ker_tau) == len(gammas),
         f"{len(im_tau)} x {len(ker_tau)} vs {len(gammas)}"),
    )
    orders = (
        ("aut_h_total", len(gammas)),
        ("aut_h_fixing_ideal", len(fixing_ideal)),
        ("aut_h_fixing_quotient", len(fixing_quotient)),
        ("aut_h_fixing_both", len(ker_tau)),
        ("aut_coefficient", len(aut_h_alg)),
        ("aut_quotient", len(aut_g_alg)),
        ("im_tau", len(im_tau)),
        ("im_tau1", len(im_tau1)),
        ("im_tau2", len(im_tau2)),
        ("wells_trivial_pairs", len(trivial_pairs)),
    )
    listings = (
        ("kernel_of_tau", tuple(ker_tau)),
        ("image_of_tau", tuple(sorted(im_tau, key=lambda t: (t.beta.entries, t.alpha.entries)))),
    )
    return CheckReport(name="wells-exactness", orders=orders,
                       assertions=assertions, listings=listings)
