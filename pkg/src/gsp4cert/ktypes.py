"""Finite-dimensional k-types: characters, greedy decomposition and explicit modules.

k = t ⊕ V_α ⊕ V_{-α} with t = CH ⊕ CJ; J is central in k, so an irreducible
k-module of highest weight (p, q) is the spin-p representation of the sl2
spanned by H, E_α, E_{-α}, with J acting by the constant -2qi.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .exactnum import ONE, ZERO, Scalar
from .gsp4 import STD, LieElt, Weight, bracket, eigenvalue_of_weight, weight_from_eigenvalues


class NotAModuleError(ValueError):
    """A character cannot be written as a non-negative sum of irreducible characters."""


class InvalidHighestWeight(ValueError):
    pass


@dataclass(frozen=True)
class Character:
    """Weight multiset: Weight → positive multiplicity."""

    weights: Tuple[Tuple[Weight, int], ...]

    @staticmethod
    def of(mapping: Mapping[Weight, int]) -> "Character":
        for w, m in mapping.items():
            if m < 0:
                raise NotAModuleError(f"negative multiplicity at {w}")
        return Character(tuple(sorted((w, m) for w, m in mapping.items() if m)))

    def as_dict(self) -> Dict[Weight, int]:
        return dict(self.weights)

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.weights)

    def __add__(self, other: "Character") -> "Character":
        c = Counter(self.as_dict())
        c.update(other.as_dict())
        return Character.of(c)

    def __str__(self):
        return "{" + ", ".join(f"{w}:{m}" for w, m in self.weights) + "}"


def is_valid_highest_weight(w: Weight) -> bool:
    # doubled storage already guarantees p, q ∈ ½Z
    return w.p2 >= 0


def irr_character(hw: Weight) -> Character:
    if not is_valid_highest_weight(hw):
        raise InvalidHighestWeight(f"{hw} is not a highest weight")
    return Character.of({Weight(m2, hw.q2): 1 for m2 in range(-hw.p2, hw.p2 + 1, 2)})


def decompose_character(ch: Character) -> List[Weight]:
    """Greedy peel by lexicographically maximal highest weight."""
    rest = Counter(ch.as_dict())
    out: List[Weight] = []
    while True:
        live = [w for w, m in rest.items() if m > 0]
        if not live:
            break
        cands = [w for w in live if is_valid_highest_weight(w)]
        if not cands:
            raise NotAModuleError(f"no highest weight among remaining weights {sorted(live)}")
        hw = max(cands)
        for w, _ in irr_character(hw).weights:
            rest[w] -= 1
            if rest[w] < 0:
                raise NotAModuleError(f"peeling {hw} drives multiplicity of {w} negative")
        out.append(hw)
    return sorted(out)


def recompose(hws: Sequence[Weight]) -> Character:
    total = Character.of({})
    for hw in hws:
        total = total + irr_character(hw)
    return total


def multiplicity(ch: Character, hw: Weight) -> int:
    return decompose_character(ch).count(hw)


# ----------------------------------------------------------------------------
# explicit modules

K_NAMES = ("H", "J", "E_a", "E_-a")


def k_basis(e_alpha: Optional[LieElt] = None, e_malpha: Optional[LieElt] = None) -> Dict[str, LieElt]:
    return {
        "H": STD.H,
        "J": STD.J,
        "E_a": e_alpha if e_alpha is not None else STD.root(1, 0),
        "E_-a": e_malpha if e_malpha is not None else STD.root(-1, 0),
    }


def _mat_bracket(A, B):
    AB = linalg.matmul(A, B)
    BA = linalg.matmul(B, A)
    return [[x - y for x, y in zip(r, s)] for r, s in zip(AB, BA)]


@dataclass
class KModule:
    """A finite-dimensional k-module given by action matrices of H, J, E_α, E_{-α}."""

    dim: int
    labels: List[str]
    action: Dict[str, List[List[Scalar]]]
    basis: Dict[str, LieElt] = field(default_factory=k_basis)

    def __post_init__(self):
        self.verify()

    def verify(self):
        """Check ρ([X, Y]) = [ρ(X), ρ(Y)] for all pairs of the four k-basis elements."""
        vecs = [self.basis[n].vector() for n in K_NAMES]
        L = linalg.left_inverse(vecs)
        for i, x in enumerate(K_NAMES):
            for y in K_NAMES[i + 1:]:
                c = linalg.matvec(L, bracket(self.basis[x], self.basis[y]).vector())
                lhs = [[ZERO] * self.dim for _ in range(self.dim)]
                for coef, n in zip(c, K_NAMES):
                    if coef:
                        lhs = [[a + coef * b for a, b in zip(r, s)] for r, s in zip(lhs, self.action[n])]
                rhs = _mat_bracket(self.action[x], self.action[y])
                if lhs != rhs:
                    raise ValueError(f"action violates the bracket relation for [{x}, {y}]")

    def act(self, name: str, v: Sequence[Scalar]) -> Tuple[Scalar, ...]:
        return linalg.matvec(self.action[name], v)

    def weight_spaces(self) -> Dict[Weight, List[Tuple[Scalar, ...]]]:
        AH, AJ = self.action["H"], self.action["J"]
        n = self.dim
        out: Dict[Weight, List] = {}
        if _is_diagonal(AH) and _is_diagonal(AJ):
            for i in range(n):
                w = weight_from_eigenvalues(AH[i][i], AJ[i][i])
                if w is None:
                    raise ValueError("eigenvalues off the weight lattice")
                e = tuple(ONE if j == i else ZERO for j in range(n))
                out.setdefault(w, []).append(e)
            return dict(sorted(out.items()))
        total = 0
        for lh in _lattice_candidates(AH):
            VH = linalg.eigenspace(AH, lh)
            if not VH:
                continue
            for lj in _lattice_candidates(AJ):
                common = linalg.intersect(VH, linalg.eigenspace(AJ, lj))
                if common:
                    out[weight_from_eigenvalues(lh, lj)] = common
                    total += len(common)
        if total != n:
            raise ValueError("H, J do not act diagonalizably with lattice eigenvalues")
        return dict(sorted(out.items()))

    def character(self) -> Character:
        return Character.of({w: len(v) for w, v in self.weight_spaces().items()})


def _is_diagonal(A) -> bool:
    return all(not x for i, r in enumerate(A) for j, x in enumerate(r) if i != j)


def _lattice_candidates(A) -> List[Scalar]:
    """Eigenvalues -i·k (k ∈ Z) allowed by the row-sum bound on the spectral radius."""
    bound = max((sum((abs(x.re) + abs(x.im) for x in r), Fraction(0)) for r in A), default=Fraction(0))
    m = int(bound) + 1
    return [Scalar(0, -k) for k in range(-m, m + 1)]


def highest_weight_vectors(mod: KModule, hw: Weight) -> List[Tuple[Scalar, ...]]:
    """Basis of {v in the hw weight space : E_α v = 0}."""
    space = mod.weight_spaces().get(hw, [])
    if not space:
        return []
    # solve E_α (Σ c_i s_i) = 0
    imgs = [mod.act("E_a", s) for s in space]
    A = linalg.transpose(imgs)
    sols = linalg.nullspace(A, len(space))
    out = []
    for c in sols:
        v = linalg.zeros(mod.dim)
        for ci, s in zip(c, space):
            if ci:
                v = linalg.vadd(v, linalg.vscale(ci, s))
        out.append(v)
    return out


def spin_module(hw: Weight, e_alpha: Optional[LieElt] = None, e_malpha: Optional[LieElt] = None) -> KModule:
    """Irreducible k-module of highest weight hw, basis v_p, v_{p-1}, …, v_{-p} (v_j of weight jα+qβ).

    With H_α = [E_α, E_{-α}] and c = α(H_α), the triple (E_α, (2/c)H_α, (2/c)E_{-α})
    is a standard sl2 triple; E_α raises and E_{-α} lowers.
    """
    if not is_valid_highest_weight(hw):
        raise InvalidHighestWeight(str(hw))
    basis = k_basis(e_alpha, e_malpha)
    Ha = bracket(basis["E_a"], basis["E_-a"])
    x = STD.t.coords(Ha)
    c = x[0] * Scalar(0, -2) + x[1] * Scalar(0, 0)  # α(H) = -2i, α(J) = 0
    if x[1]:
        raise ValueError("[E_α, E_{-α}] is expected to be a multiple of H")
    p2 = hw.p2
    n = p2 + 1
    js = [Fraction(p2 - 2 * k, 2) for k in range(n)]  # v_j ordering: top first
    Hm = [[ZERO] * n for _ in range(n)]
    Jm = [[ZERO] * n for _ in range(n)]
    Em = [[ZERO] * n for _ in range(n)]
    Fm = [[ZERO] * n for _ in range(n)]
    p = Fraction(p2, 2)
    for k, j in enumerate(js):
        Hm[k][k] = Scalar(0, -2 * j)
        Jm[k][k] = Scalar(0, -2 * hw.q)
        # standard basis w_k = f'^k w_0: f' w_k = w_{k+1}, e w_k = k(2p-k+1) w_{k-1}
        if k + 1 < n:
            Fm[k + 1][k] = c / 2  # E_{-α} = (c/2) f'
        if k >= 1:
            Em[k - 1][k] = Scalar(k * (2 * p - k + 1))
    labels = [f"v_{j}" for j in js]
    return KModule(n, labels, {"H": Hm, "J": Jm, "E_a": Em, "E_-a": Fm}, basis)


def wedge_module(k: int, frame=None) -> KModule:
    """∧^k b0* with the coadjoint action, on the basis of increasing index tuples."""
    from .forms import ROOT, Multivector, k_action

    frame = frame or ROOT
    keys = list(combinations(range(frame.dim), k))
    pos = {key: i for i, key in enumerate(keys)}
    basis = k_basis()
    action = {}
    for name in K_NAMES:
        X = basis[name]
        cols = []
        for key in keys:
            img = k_action(X, Multivector(frame, {key: ONE}))
            col = [ZERO] * len(keys)
            for kk, c in img.terms.items():
                col[pos[kk]] = c
            cols.append(col)
        action[name] = linalg.transpose(cols)
    labels = ["∧".join(frame.labels[i] + "*" for i in key) for key in keys]
    mod = KModule(len(keys), labels, action, basis)
    mod.keys = keys  # type: ignore[attr-defined]
    mod.frame = frame  # type: ignore[attr-defined]
    return mod


def b0_module() -> KModule:
    """b0 ≅ g/k~ itself (vectors, not covectors) in the root frame."""
    from .forms import ROOT, vector_action_matrix

    basis = k_basis()
    action = {n: vector_action_matrix(basis[n], ROOT) for n in K_NAMES}
    return KModule(6, [f"e_{l}" for l in ROOT.labels], action, basis)


def vector_to_multivector(mod: KModule, v: Sequence[Scalar]):
    from .forms import Multivector

    return Multivector(mod.frame, {key: c for key, c in zip(mod.keys, v) if c})  # type: ignore[attr-defined]


STATED_WEDGE2_HIGHEST = [Weight.of(0, 0), Weight.of(1, -2), Weight.of(1, 0), Weight.of(1, 2), Weight.of(2, 0)]


@dataclass
class LoweringChain:
    """η_2, E_{-α}η_2, E_{-α}²η_2, … compared with the printed η_j."""

    chain: Dict[int, object]
    ratios: Dict[int, Optional[Scalar]]
    weights: Dict[int, Optional[Weight]]
    eta2_highest: bool

    @property
    def reaches_all(self) -> bool:
        return all(r is not None and r for r in self.ratios.values())


def eta_lowering_chain(e_malpha: Optional[LieElt] = None) -> LoweringChain:
    """Lower η_2 four times by E_{-α} and express each step against the printed η_j."""
    from .forms import form_weight, k_action, named_forms

    F = named_forms()
    Em = e_malpha if e_malpha is not None else STD.root(-1, 0)
    v = F["eta_2"]
    chain, ratios, weights = {2: v}, {2: ONE}, {}
    for j in (1, 0, -1, -2):
        v = k_action(Em, v)
        chain[j] = v
        ratios[j] = v.proportional_to(F[f"eta_{j}"]) if v else None
    for j in range(-2, 3):
        weights[j] = form_weight(F[f"eta_{j}"])
    top = not k_action(STD.root(1, 0), F["eta_2"])
    return LoweringChain(chain, ratios, weights, top)
