"""Named verification suites.

Each suite is a function ``(cfg) -> list[Check]``. A check compares a computed
left-hand side with a claimed right-hand side and records both, their
difference, and an anchor string: the claim being certified, written out as
the identity it asserts. Status is ``pass``, ``fail`` or ``info`` (reported
data that is not asserted).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from .exactnum import ONE, ZERO, Poly, RatFun, Scalar, as_poly, ratfun_eq
from .gsp4 import STD, Weight, h_subalgebra, root_decompose, subalgebra_closed, verify_frame_change

SUITES = (
    "lie-structure",
    "frame-change",
    "wedge-decomp",
    "eta-basis",
    "section6-forms",
    "closedness",
    "ad-pullback",
    "uea-identities",
    "period-reduction",
)


@dataclass
class VerifyConfig:
    suites: List[str] = field(default_factory=lambda: list(SUITES))
    max_degree: int = 6
    word_length: int = 5
    confluence_samples: int = 200
    associativity_samples: int = 60
    commutation_max_i: int = 5
    c_degree_max_i: int = 4
    seed: int = 0

    @staticmethod
    def from_dict(d: dict) -> "VerifyConfig":
        known = set(VerifyConfig.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        return VerifyConfig(**d)


@dataclass
class Check:
    id: str
    anchor: str
    status: str
    left: str = ""
    right: str = ""
    difference: str = ""
    wall_time_s: float = 0.0

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "status": self.status,
            "witness": {"left": self.left, "right": self.right, "difference": self.difference},
            "wall_time_s": self.wall_time_s,
        }


def _s(x) -> str:
    if x is None:
        return "None"
    if isinstance(x, Weight):
        return x.label()
    return str(x)


def compare(cid: str, anchor: str, left, right, equal: Optional[bool] = None, diff=None) -> Check:
    ok = (left == right) if equal is None else equal
    if diff is None and not ok:
        try:
            diff = left - right
        except Exception:
            diff = "≠"
    return Check(cid, anchor, "pass" if ok else "fail", _s(left), _s(right), "0" if ok else _s(diff))


def info(cid: str, anchor: str, value) -> Check:
    return Check(cid, anchor, "info", _s(value), "", "")


class Timed:
    """Collects checks and stamps each with the time spent producing it."""

    def __init__(self):
        self.out: List[Check] = []
        self._t = time.perf_counter()

    def add(self, c: Check):
        now = time.perf_counter()
        c.wall_time_s = round(now - self._t, 6)
        self._t = now
        self.out.append(c)


# ----------------------------------------------------------------------------


def suite_lie_structure(cfg: VerifyConfig) -> List[Check]:
    T = Timed()
    p = root_decompose(STD.p, STD.t)
    want_p = {Weight.of(s * a, s * b): 1 for a, b in ((1, 1), (1, -1), (0, 1)) for s in (1, -1)}
    got_p = {w: sp.dim for w, sp in p.items()}
    T.add(compare("lie/p-roots", "p = ⊕ V_γ over γ ∈ {±(α+β), ±(α−β), ±β}, each 1-dimensional",
                  _wdims(got_p), _wdims(want_p), got_p == want_p, "weight sets differ"))
    k = root_decompose(STD.k, STD.t)
    got_k = {w: sp.dim for w, sp in k.items()}
    want_k = {Weight.of(0, 0): 2, Weight.of(1, 0): 1, Weight.of(-1, 0): 1}
    T.add(compare("lie/k-roots", "k = t ⊕ V_α ⊕ V_{−α}", _wdims(got_k), _wdims(want_k), got_k == want_k, "weight sets differ"))
    t_in_k = all(STD.k.contains(x) for x in STD.t.basis)
    T.add(compare("lie/t-in-k", "t = CH ⊕ CJ ⊂ k", t_in_k, True))
    from . import linalg

    r = linalg.rank(STD.k.vectors() + STD.p.vectors())
    T.add(compare("lie/cartan-decomposition", "g0 = k ⊕ p", r, 10))
    T.add(compare("lie/alpha-functional", "α(n1H + n2J) = −2n1 i and β(n1H + n2J) = −2n2 i on the pinned roots", _alpha_ok(), True))
    from .ktypes import is_valid_highest_weight

    samples = [Weight(p2, q2) for p2 in range(-2, 5) for q2 in range(-2, 3)]
    got = [w.label() for w in samples if is_valid_highest_weight(w)]
    want = [w.label() for w in samples if w.p >= 0]
    T.add(compare("lie/highest-weight-predicate", "(n1, n2) is a highest weight iff n1 ∈ ½Z≥0", got, want))
    T.add(compare("lie/h-closed", "h = t ⊕ V_{±(α+β)} ⊕ V_{±(α−β)} is closed under brackets", subalgebra_closed(h_subalgebra()), True))
    return T.out


def _alpha_ok() -> bool:
    from .gsp4 import weight_of

    return weight_of(STD.root(1, 0), STD.t) == Weight.of(1, 0) and weight_of(STD.root(0, 1), STD.t) == Weight.of(0, 1)


def _wdims(d: Dict[Weight, int]) -> str:
    return "{" + ", ".join(f"{w.label()}:{m}" for w, m in sorted(d.items())) + "}"


def suite_frame_change(cfg: VerifyConfig) -> List[Check]:
    T = Timed()
    rep = verify_frame_change(printed=True)
    for name in STD.root_frame_names:
        coeffs = " + ".join(f"({c})·{b}" for c, b in zip(STD.frame_change_printed[name], STD.borel_names) if c)
        T.add(compare(f"frame/e_{name}", f"e_{name} = {coeffs} has weight {rep.expected[name].label()} mod k~",
                      rep.weights[name], rep.expected[name]))
    T.add(compare("frame/rank", "the six e_γ form a basis of b0", rep.rank, 6))
    fixed = verify_frame_change(printed=False)
    T.add(info("frame/corrected-e_-a+b", "weight vector of weight −α+β used downstream: ½h + i n0 − i n2 + n3",
               fixed.weights["-a+b"].label() if fixed.weights["-a+b"] else None))
    return T.out


def suite_wedge_decomp(cfg: VerifyConfig) -> List[Check]:
    from .ktypes import (STATED_WEDGE2_HIGHEST, b0_module, decompose_character, highest_weight_vectors,
                         wedge_module, Character)
    from collections import Counter
    from itertools import combinations

    T = Timed()
    want = sorted(STATED_WEDGE2_HIGHEST)
    label = "{0, α−2β, α, α+2β, 2α}, each once"
    mods = {}
    for k in (2, 4):
        mods[k] = wedge_module(k)
        got = decompose_character(mods[k].character())
        T.add(compare(f"wedge/dual-{k}", f"∧^{k} b0* = ⊕ irreducibles of highest weights {label}",
                      [w.label() for w in got], [w.label() for w in want]))
    b0 = b0_module().character()
    wts = [w for w, m in b0.weights for _ in range(m)]
    for k in (2, 4):
        ch = Character.of(Counter(Weight(sum(w.p2 for w in c), sum(w.q2 for w in c)) for c in combinations(wts, k)))
        got = decompose_character(ch)
        T.add(compare(f"wedge/vec-{k}", f"∧^{k} b0 = ⊕ irreducibles of highest weights {label}",
                      [w.label() for w in got], [w.label() for w in want]))
    m = decompose_character(mods[2].character()).count(Weight.of(2, 0))
    T.add(compare("wedge/mult-2alpha", "the 2α-isotypic part of ∧² b0* is 1-dimensional as a k-type", m, 1))
    hv = highest_weight_vectors(mods[2], Weight.of(2, 0))
    T.add(compare("wedge/hw-2alpha", "the space of highest weight vectors of weight 2α in ∧² b0* is 1-dimensional", len(hv), 1))
    return T.out


def suite_eta_basis(cfg: VerifyConfig) -> List[Check]:
    from .forms import named_forms
    from .ktypes import eta_lowering_chain

    T = Timed()
    F = named_forms()
    ch = eta_lowering_chain()
    for j in (2, 1, 0, -1, -2):
        T.add(compare(f"eta/weight-{j}", f"η_{j} = {F[f'eta_{j}']} has weight {j}α", ch.weights[j], Weight.of(j, 0)))
    T.add(compare("eta/highest", "η_2 = e*_{−α−β}∧e*_{−α+β} is a highest weight vector (E_α η_2 = 0)", ch.eta2_highest, True))
    for j in (1, 0, -1, -2):
        r = ch.ratios[j]
        T.add(compare(f"eta/lowering-{j}", f"E_{{−α}}^{2 - j} η_2 is a non-zero multiple of η_{j}",
                      ch.chain[j], F[f"eta_{j}"], r is not None and bool(r),
                      "not proportional" if r is None else None))
    return T.out


def suite_section6_forms(cfg: VerifyConfig) -> List[Check]:
    from .forms import M0, named_forms, pullback
    from .invcalc import eisenstein_seed_closed, weights_of_section6_forms

    T = Timed()
    F = named_forms()
    W = weights_of_section6_forms()
    for n in ("eta^+", "eta^-", "eta_+", "eta_-"):
        got = {**W.eta_upper, **W.eta_lower}[n]
        T.add(compare(f"s6/weight-{n}", f"{n} = {F[n]} has H-weight {W.expected[n].label()}", got, W.expected[n]))
    for src, dst, sign in (("eta^+", "eta^-", 1), ("eta^-", "eta^+", 1), ("eta_+", "eta_-", -1), ("eta_-", "eta_+", -1)):
        img = pullback(M0, F[src])
        want = F[dst].scale(Scalar(sign))
        T.add(compare(f"s6/m0-{src}", f"diag(1,−1) sends {src} to {'−' if sign < 0 else ''}{dst}", img, want))
    T.add(info("s6/u-star-table", "H-weights of a weight basis of ∧²u* (open question, reported only)",
               "; ".join(f"{k}: {w.label() if w else None}" for k, w in W.u_star_table)))
    seed = eisenstein_seed_closed()
    T.add(compare("s6/eta_o", "η_o = 2a* and dη_o = 0", seed.eta_o_matches_2a, True, diff=seed.eta_o))
    T.add(compare("s6/chain-rule", "d(κ(λ(g))) = λ(g)κ′(λ(g)) η_o", seed.chain_rule_ok, True))
    T.add(compare("s6/seed-closed", "d(κ(λ) ω∧η_o) = 0 for closed ω", _dict_s(seed.d_eta), "{}", not seed.d_eta))
    return T.out


def _dict_s(d) -> str:
    return "{" + ", ".join(f"{k}: {v}" for k, v in sorted(d.items())) + "}"


def suite_closedness(cfg: VerifyConfig) -> List[Check]:
    from itertools import combinations

    from .forms import BOREL, Multivector
    from .invcalc import (ce_d, closedness_condition, d_table, derived_relation, stated_d_table,
                          stated_higher_identities, stated_relation)

    T = Timed()
    got, want = d_table(), stated_d_table()
    for x in STD.borel_names:
        T.add(compare(f"closed/d-{x}", f"d({x}*) = {want[x]}", got[x], want[x]))
    for label, form, printed in stated_higher_identities():
        T.add(compare(f"closed/{label}", f"{label} = {printed}", ce_d(form), printed))
    bad = []
    for k in range(7):
        for key in combinations(range(6), k):
            if ce_d(ce_d(Multivector(BOREL, {key: ONE}))):
                bad.append(key)
    T.add(compare("closed/d-squared", "d∘d = 0 on all 64 basis monomials", len(bad), 0))
    res = closedness_condition()
    T.add(compare("closed/obstruction", "d(η^{τ1,τ2}) = (−τ1 + (2 − 2θ1 + 2θ2)τ2) a*∧h*∧n0*∧(n1*−n2*)∧n3*",
                  res.obstruction, res.stated_obstruction, res.matches_stated))
    rem = res.d_eta.substitute(stated_relation())
    T.add(compare("closed/stated-relation", "τ1 = (2 − 2θ1 + 2θ2)τ2 makes η^{τ1,τ2} closed", rem, "0", not rem, rem))
    T.add(info("closed/derived-relation", "τ1 = (2θ2 − 2θ1)τ2 closes η^{τ1,τ2}", res.closed_under(derived_relation())))
    return T.out


def suite_ad_pullback(cfg: VerifyConfig) -> List[Check]:
    from .forms import (DIAG_I_MINUS_I, K_NAMES_OMEGA, M0, ad_k_theta_cs_table, identity_branch_scalars,
                        k_action, named_forms, stated_ad_table, stated_dual_table, dual_table_cs,
                        stated_pullback_scalars, pullback, pullback_scalars)

    T = Timed()
    table = ad_k_theta_cs_table()
    stated = stated_ad_table()
    names = STD.borel_names
    for j, x in enumerate(names):
        col = table[j]
        T.add(compare(f"ad/{x}", f"Ad_k(θ) {x} = {_lin(stated[x])}", _lin(col), _lin(stated[x]),
                      [as_poly(u) for u in col] == [as_poly(u) for u in stated[x]],
                      _lin([as_poly(u) - as_poly(v) for u, v in zip(col, stated[x])])))
    dual = dual_table_cs(table)
    pdual = stated_dual_table()
    for i, x in enumerate(names):
        T.add(compare(f"ad/{x}*", f"Ad*_k(θ) {x}* = {_lin(pdual[x], star=True)}", _lin(dual[x], star=True),
                      _lin(pdual[x], star=True), dual[x] == pdual[x],
                      _lin([u - v for u, v in zip(dual[x], pdual[x])], star=True)))
    f1, f2 = pullback_scalars()
    p1, p2 = stated_pullback_scalars()
    T.add(compare("ad/f1", "f1 = (r1² − r2²δ²)² / (r1² + r2²δ²)²", f1, p1, ratfun_eq(f1, p1)))
    T.add(compare("ad/f2", "f2 = (2r1r2δ)² / (r1² + r2²δ²)²", f2, p2, ratfun_eq(f2, p2)))
    s = f1 + f2
    T.add(compare("ad/f1+f2", "f1 + f2 = 1", s, RatFun(1), ratfun_eq(s, RatFun(1))))
    g1 = identity_branch_scalars()
    T.add(compare("ad/gamma-1", "γ = 1: η¹ restricts to η¹ and η² restricts to 0", g1, (ONE, ZERO), g1 == (ONE, ZERO), "≠"))
    F = named_forms()
    w0 = F["omega0"]
    for n, X in K_NAMES_OMEGA().items():
        img = k_action(X, w0)
        T.add(compare(f"omega0/{n}", f"{n}·ω0 = 0 for ω0 = h*∧n2* + ½n0*∧n3* + a*∧n1*", img, "0", not img, img))
    for label, g in (("diag(1,-1,1,-1)", M0), ("diag(1,1,-1,-1)", DIAG_I_MINUS_I)):
        img = pullback(g, w0)
        T.add(compare(f"omega0/{label}", f"ω0 is fixed by the pullback of {label}", img, w0))
    return T.out


def _lin(coeffs, star: bool = False) -> str:
    parts = []
    for c, b in zip(coeffs, STD.borel_names):
        c = as_poly(c)
        if c:
            parts.append(f"({c})·{b}{'*' if star else ''}")
    return " + ".join(parts) or "0"


def suite_uea_identities(cfg: VerifyConfig) -> List[Check]:
    from .uea import (casimir, commutation_identity, commutation_identity_substituted, e_beta_power_times_h,
                      g0_algebra, pbw_product, UEAElt)

    T = Timed()
    A = g0_algebra()
    rng = random.Random(cfg.seed)
    bad = 0
    for _ in range(cfg.confluence_samples):
        w = tuple(rng.randrange(A.n) for _ in range(rng.randint(1, cfg.word_length)))
        if UEAElt(A, A.normalize_word(w, "left")) != UEAElt(A, A.normalize_word(w, "right")):
            bad += 1
    T.add(compare("uea/confluence", f"leftmost and rightmost rewriting agree on {cfg.confluence_samples} random words of length ≤ {cfg.word_length}", bad, 0))
    bad = 0
    for _ in range(cfg.associativity_samples):
        x, y, z = (A.elt({tuple(sorted(rng.randrange(A.n) for _ in range(rng.randint(0, 3)))): ONE}) for _ in range(3))
        if pbw_product(pbw_product(x, y), z) != pbw_product(x, pbw_product(y, z)):
            bad += 1
    T.add(compare("uea/associativity", f"(xy)z = x(yz) on {cfg.associativity_samples} random monomial triples of degree ≤ 3", bad, 0))
    cas = casimir()
    for nm in A.names:
        T.add(compare(f"uea/casimir-central-{nm}", f"Ω·{nm} = {nm}·Ω", cas.central[nm], True))
    T.add(compare("uea/casimir-shape", "Ω = F(H_α,H_β) + E_αE_{−α} + E_βE_{−β} + E_{α+β}E_{−α−β} + E_{α−β}E_{−α+β}",
                  cas.shape_ok and all(v == ONE for v in cas.pair_coefficients.values()), True, diff=cas.omega))
    T.add(info("uea/casimir", "Ω in PBW normal form", cas.omega))
    for j in range(1, 4):
        lhs, rhs = e_beta_power_times_h(j)
        T.add(compare(f"uea/EbH-{j}", f"E_β^{j} H_β = (H_β − {j}β(H_β)) E_β^{j}", lhs, rhs))
    for i in range(1, cfg.commutation_max_i + 1):
        anchor = (f"E_β^{i}E_{{−β}}^{i} = E_βE_{{−β}}E_β^{i-1}E_{{−β}}^{i-1} + {i - 1}H_βE_β^{i-1}E_{{−β}}^{i-1}"
                  f" − ({i * (i - 1)}β(H_β)/2)E_β^{i-1}E_{{−β}}^{i-1}")
        r = commutation_identity(i)
        T.add(compare(f"uea/commutation-{i}", anchor, r.lhs, r.rhs, r.holds))
        s = commutation_identity(i, symbolic=True)
        T.add(compare(f"uea/commutation-symbolic-{i}", anchor + " (β(H_β) symbolic)", s.lhs, s.rhs, s.holds))
        T.add(compare(f"uea/commutation-substituted-{i}", anchor + " (symbolic form at β(H_β) computed)",
                      commutation_identity_substituted(i), True))
    T.add(compare("uea/h-closed", "h = t ⊕ V_{±(α+β)} ⊕ V_{±(α−β)} is closed under brackets", subalgebra_closed(h_subalgebra()), True))
    return T.out


def suite_period_reduction(cfg: VerifyConfig) -> List[Check]:
    from .forms import k_action
    from .uea import LAMBDA, PeriodReducer, UEAElt, g0_algebra, g0_basis, stated_recursion_check, spin2_mu

    T = Timed()
    RA, RB = PeriodReducer("A"), PeriodReducer("B")
    top = cfg.max_degree // 2
    for i in range(top + 1):
        T.add(compare(f"period/strategy-C{i}", f"ℓ(E_β^{i}E_{{−β}}^{i}φ0) = C_{i}ℓ(φ0) independent of reduction strategy", RA.C(i), RB.C(i)))
    A = g0_algebra()
    rng = random.Random(cfg.seed + 1)
    bad = 0
    for _ in range(cfg.confluence_samples):
        w = _weight_zero_word(A, rng, cfg.max_degree) if rng.random() < 0.5 else \
            tuple(rng.randrange(A.n) for _ in range(rng.randint(1, cfg.max_degree)))
        if RA.reduce_word(w) != RB.reduce_word(w):
            bad += 1
    T.add(compare("period/strategy-random", f"period_reduce agrees across strategies on {cfg.confluence_samples} random R of degree ≤ {cfg.max_degree}", bad, 0))
    T.add(compare("period/C0", "C_0 = 1", RA.C(0), Poly.const(1)))
    mu = spin2_mu()
    oracle = _mu_oracle()
    T.add(compare("period/mu1-oracle", "μ1 from spin-2 matrices equals E_αE_{−α} on the weight-0 vector of the 2α k-type in ∧² b0*",
                  mu[1], oracle[1]))
    T.add(compare("period/mu2-oracle", "μ2 from spin-2 matrices equals E_α²E_{−α}² on the weight-0 vector of the 2α k-type in ∧² b0*",
                  mu[2], oracle[2]))
    T.add(compare("period/C1", "C_1 = λ − μ1", RA.C(1), LAMBDA - Poly.const(mu[1])))
    for i in range(1, cfg.c_degree_max_i + 1):
        T.add(compare(f"period/degree-C{i}", f"C_{i} has degree {i} in λ", RA.C(i).degree("lambda"), i))
    for i in range(1, cfg.c_degree_max_i + 1):
        lhs, rhs = stated_recursion_check(i, RA)
        T.add(compare(f"period/recursion-{i}", f"ℓ(E_β^{i}E_{{−β}}^{i}φ0) = (λ − {i * (i - 1)}β(H_β)/2)C_{i - 1} − ℓ(E_αE_{{−α}}E_β^{i-1}E_{{−β}}^{i-1}φ0)", lhs, rhs))
    T.add(info("period/mu", "μ_j for j = 0..4 (E_α^jE_{−α}^j v0 = μ_j v0)", [str(m) for m in mu]))
    T.add(info("period/C", f"C_i for i ≤ {top}", [str(RA.C(i)) for i in range(top + 1)]))
    return T.out


_PAIRS = (("E_a", "E_-a"), ("E_b", "E_-b"), ("E_a+b", "E_-a-b"), ("E_a-b", "E_-a+b"))


def _weight_zero_word(A, rng: random.Random, max_len: int):
    """A shuffled word of total weight zero: paired E_{±γ} letters plus optional H letters."""
    letters = []
    while len(letters) + 2 <= max_len and (not letters or rng.random() < 0.7):
        letters += list(rng.choice(_PAIRS))
    if len(letters) < max_len and rng.random() < 0.3:
        letters.append(rng.choice(("H_a", "H_b")))
    rng.shuffle(letters)
    return tuple(A.index[x] for x in letters)


def _mu_oracle() -> List[Scalar]:
    """Independent μ_j: act on E_{−α}²η_2 inside ∧² b0* with the same E_{±α}."""
    from .forms import k_action, named_forms
    from .uea import g0_basis

    gb = g0_basis()
    Ea, Ema = gb.elements["E_a"], gb.elements["E_-a"]
    v0 = k_action(Ema, k_action(Ema, named_forms()["eta_2"]))
    out = [ONE]
    for j in (1, 2):
        w = v0
        for _ in range(j):
            w = k_action(Ema, w)
        for _ in range(j):
            w = k_action(Ea, w)
        out.append(w.proportional_to(v0))
    return out


REGISTRY: Dict[str, Callable[[VerifyConfig], List[Check]]] = {
    "lie-structure": suite_lie_structure,
    "frame-change": suite_frame_change,
    "wedge-decomp": suite_wedge_decomp,
    "eta-basis": suite_eta_basis,
    "section6-forms": suite_section6_forms,
    "closedness": suite_closedness,
    "ad-pullback": suite_ad_pullback,
    "uea-identities": suite_uea_identities,
    "period-reduction": suite_period_reduction,
}
