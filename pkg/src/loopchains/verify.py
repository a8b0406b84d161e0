"""Verification suites: every identity of the library as a runnable check.

Each suite walks a deterministic list of generators, compares two sides of
an identity, and stops at the first generator where they differ. The result
records that generator and both sides in canonical text form.
"""
from __future__ import annotations

import random
from collections import defaultdict
from typing import Callable, NamedTuple

from .exactalg import format_coefficient
from .simplicial import Complex, boundary, fmt_simplex, quotient_chains
from .pathcat import Word, concat, fmt_word, identity, word_differential_raw, d_sum
from .hopf import (nabla0, nabla0_bead, nabla0_op, nabla1, antipode, counit, tau, tensor_d,
                   tensor_mul, apply_left, apply_right, mu_tensor, linear)
from .necklace import AdElement, D_raw, D_sum, D_ad_sum, weight_basis
from .constloops import (rho_raw, chi_direct_raw, chi_composed_raw, iota_raw, T_raw, psi_raw,
                         homotopy_defect, HomotopyNotFound)
from .homology import theta_pi_raw, coch_D_raw


class SuiteResult(NamedTuple):
    suite: str
    passed: bool
    checked: int
    generator: str = ""
    lhs: str = ""
    rhs: str = ""
    note: str = ""

    def to_json(self) -> dict:
        out = {"suite": self.suite, "passed": self.passed, "checked": self.checked}
        if not self.passed:
            out.update(generator=self.generator, lhs=self.lhs, rhs=self.rhs)
        if self.note:
            out["note"] = self.note
        return out

    def to_text(self) -> str:
        head = f"{self.suite}: {'pass' if self.passed else 'FAIL'} ({self.checked} generators checked)"
        if self.note:
            head += f"\n  note: {self.note}"
        if self.passed:
            return head
        return f"{head}\n  first failure at {self.generator}\n  lhs = {self.lhs}\n  rhs = {self.rhs}"


class VerifyConfig(NamedTuple):
    max_dim: int = 4
    weight: int = 4
    collapse: tuple = ()
    seed: int = 0
    pairs: int = 60


# ---------------------------------------------------------------------------
# helpers


def _clean(a: dict) -> dict:
    return {k: v for k, v in a.items() if v}


def _sub(a: dict, b: dict) -> dict:
    out: dict = defaultdict(int)
    for k, v in a.items():
        out[k] += v
    for k, v in b.items():
        out[k] -= v
    return _clean(out)


def _fmt_sum(a: dict, fmt: Callable = str) -> str:
    if not a:
        return "0"
    items = sorted(((fmt(k), v) for k, v in a.items() if v))
    return " ".join(f"{format_coefficient(v)}·{s}" for s, v in items)


def _fmt_pair(p) -> str:
    return fmt_word(p[0]) + "⊗" + fmt_word(p[1])


class _Runner:
    """Counts generators and remembers the first mismatch."""

    def __init__(self, name: str):
        self.name = name
        self.checked = 0
        self.failure = None

    def check(self, generator: str, lhs: dict, rhs: dict, fmt: Callable = str) -> bool:
        self.checked += 1
        if _sub(lhs, rhs):
            self.failure = (generator, _fmt_sum(lhs, fmt), _fmt_sum(rhs, fmt))
            return False
        return True

    def result(self, note: str = "") -> SuiteResult:
        if self.failure:
            return SuiteResult(self.name, False, self.checked, *self.failure, note=note)
        return SuiteResult(self.name, True, self.checked, note=note)


def simplices_upto(X: Complex, max_dim: int) -> list:
    return [s for k in range(min(max_dim, X.dim) + 1) for s in X.of_dim(k)]


def beads_of(X: Complex, max_dim: int) -> list:
    """Simplex beads of dim 1..max_dim plus all inverse edges."""
    beads = [s for k in range(1, min(max_dim, X.dim) + 1) for s in X.of_dim(k)]
    return beads + [(e[1], e[0]) for e in X.of_dim(1)]


def _bead_dim(b) -> int:
    return len(b) - 1


def words_of(X: Complex, max_beads: int, max_total_dim: int, max_dim: int) -> list[Word]:
    """All reduced words of 1..max_beads beads with total bead dimension bounded."""
    beads = beads_of(X, max_dim)
    starting = defaultdict(list)
    for b in beads:
        starting[b[0]].append(b)
    out = []

    def rec(seq, total):
        if seq:
            out.append(Word(seq[0][0], tuple(seq)))
        if len(seq) == max_beads:
            return
        v = seq[-1][-1]
        for b in starting[v]:
            if total + _bead_dim(b) > max_total_dim:
                continue
            last = seq[-1]
            if len(b) == 2 and len(last) == 2 and last == (b[1], b[0]):
                continue
            rec(seq + [b], total + _bead_dim(b))

    for b in beads:
        rec([b], _bead_dim(b))
    return out


def _sample_pairs(X: Complex, cfg: VerifyConfig) -> list[tuple[Word, Word]]:
    """Deterministic random composable pairs of short words."""
    words = words_of(X, 2, cfg.max_dim + 1, cfg.max_dim)
    by_source = defaultdict(list)
    for w in words:
        by_source[w.source].append(w)
    rng = random.Random(cfg.seed)
    pairs = []
    if not words:
        return pairs
    for _ in range(cfg.pairs):
        u = rng.choice(words)
        if by_source[u.target]:
            pairs.append((u, rng.choice(by_source[u.target])))
    return pairs


# ---------------------------------------------------------------------------
# suites


def suite_chainmap_rho(X: Complex, cfg: VerifyConfig) -> SuiteResult:
    r = _Runner("chainmap-rho")
    for s in simplices_upto(X, cfg.max_dim):
        lhs = D_sum(rho_raw(s))
        rhs: dict = defaultdict(int)
        for f, c in boundary(s).items():
            for n, x in rho_raw(f).items():
                rhs[n] += c * x
        if not r.check(f"D rho {fmt_simplex(s)} = rho ∂{fmt_simplex(s)}", lhs, rhs):
            break
    return r.result()


def suite_chainmap_chi(X: Complex, cfg: VerifyConfig) -> SuiteResult:
    r = _Runner("chainmap-chi")
    for s in simplices_upto(X, cfg.max_dim):
        name = fmt_simplex(s)
        direct = chi_direct_raw(s)
        if not r.check(f"chi_direct {name} = psi T iota {name}", direct, chi_composed_raw(s)):
            break
        rhs: dict = defaultdict(int)
        for f, c in boundary(s).items():
            for n, x in chi_direct_raw(f).items():
                rhs[n] += c * x
        if not r.check(f"D chi {name} = chi ∂{name}", D_sum(direct), rhs):
            break
        if len(s) <= 2 and not r.check(f"chi {name} = rho {name}", direct, rho_raw(s)):
            break
    return r.result()


def suite_d2(X: Complex, cfg: VerifyConfig) -> SuiteResult:
    r = _Runner("d2")
    for w in words_of(X, 3, 8, cfg.max_dim):
        if not r.check(f"d d {fmt_word(w)}", d_sum(word_differential_raw(w)), {}):
            break
    return r.result()


def _ad_elements(X: Complex, cfg: VerifyConfig):
    tails_by_vertex = defaultdict(list)
    for w in words_of(X, 2, cfg.max_dim + 1, cfg.max_dim):
        if w.source == w.target:
            tails_by_vertex[w.source].append(w)
    for s in simplices_upto(X, cfg.max_dim):
        for tail in [identity(s[-1])] + tails_by_vertex[s[-1]]:
            for op in (False, True):
                yield AdElement(s, tail, op)


def suite_D2(X: Complex, cfg: VerifyConfig) -> SuiteResult:
    r = _Runner("D2")
    for n in range(1, cfg.weight + 1):
        for b in weight_basis(X, n, cfg.weight):
            if not r.check(f"D D {b}", D_sum(D_raw(b)), {}):
                return r.result()
    for e in _ad_elements(X, cfg):
        label = ("D_ad-op D_ad-op " if e.op else "D_ad D_ad ") + str(e)
        if not r.check(label, D_ad_sum(D_ad_sum({e: 1})), {}):
            break
    return r.result()


def _bead_words(X: Complex, cfg: VerifyConfig) -> list[Word]:
    return [Word(b[0], (b,)) for b in beads_of(X, cfg.max_dim)]


def suite_hopf(X: Complex, cfg: VerifyConfig) -> SuiteResult:
    r = _Runner("hopf")
    words = _bead_words(X, cfg)
    D = lambda w: d_sum({w: 1})
    for w in words:
        name = fmt_word(w)
        n0 = nabla0(w)
        # coassociativity
        lhs = _triple(apply_left(nabla0, n0))
        rhs = _triple(apply_right(nabla0, n0), right=True)
        if not r.check(f"coassociativity at {name}", lhs, rhs, _fmt_triple):
            return r.result()
        # counit on both sides
        left = _clean({b: c * counit(a) for (a, b), c in n0.items()})
        right = _clean({a: c * counit(b) for (a, b), c in n0.items()})
        if not r.check(f"(eps⊗id)∇₀ {name}", left, {w: 1}, fmt_word):
            return r.result()
        if not r.check(f"(id⊗eps)∇₀ {name}", right, {w: 1}, fmt_word):
            return r.result()
        # compatibility with d
        if not r.check(f"∇₀ d = (d⊗1+1⊗d)∇₀ at {name}", linear(nabla0, D(w)), tensor_d(n0), _fmt_pair):
            return r.result()
        # homotopy identity for ∇₁
        lhs = defaultdict(int)
        for t, c in tensor_d(nabla1(w)).items():
            lhs[t] += c
        for t, c in linear(nabla1, D(w)).items():
            lhs[t] += c
        if not r.check(f"(d⊗1+1⊗d)∇₁ + ∇₁d = ∇₀^op − ∇₀ at {name}", lhs,
                       _sub(nabla0_op(w), n0), _fmt_pair):
            return r.result()
    for u, v in _sample_pairs(X, cfg):
        name = f"{fmt_word(u)}·{fmt_word(v)}"
        uv = concat(u, v)
        if not r.check(f"bimonoid at {name}", nabla0(uv), tensor_mul(nabla0(u), nabla0(v)), _fmt_pair):
            break
        rhs = defaultdict(int)
        su = -1 if u.degree % 2 else 1
        for t, c in tensor_mul(nabla0_op(u), nabla1(v)).items():
            rhs[t] += su * c
        for t, c in tensor_mul(nabla1(u), nabla0(v)).items():
            rhs[t] += c
        if not r.check(f"derivation identity for ∇₁ at {name}", nabla1(uv), rhs, _fmt_pair):
            break
    return r.result()


def _triple(A: dict, right: bool = False) -> dict:
    """Flatten keys ((a,b),c) or (a,(b,c)) to (a,b,c)."""
    out: dict = defaultdict(int)
    for (x, y), c in A.items():
        out[(x,) + y if right else x + (y,)] += c
    return _clean(out)


def _fmt_triple(t) -> str:
    return "⊗".join(fmt_word(w) for w in t)


def suite_antipode(X: Complex, cfg: VerifyConfig) -> SuiteResult:
    r = _Runner("antipode")
    for w in _bead_words(X, cfg):
        name = fmt_word(w)
        n0 = nabla0(w)
        unit = {identity(w.source): counit(w)} if counit(w) else {}
        unit_t = {identity(w.target): counit(w)} if counit(w) else {}
        lhs = mu_tensor(apply_right(antipode, n0))
        if not r.check(f"μ(id⊗S)∇₀ {name} = eps·id", lhs, unit, fmt_word):
            break
        lhs = mu_tensor(apply_left(antipode, n0))
        if not r.check(f"μ(S⊗id)∇₀ {name} = eps·id", lhs, unit_t, fmt_word):
            break
        if not r.check(f"S d {name} = d S {name}", linear(antipode, d_sum({w: 1})),
                       d_sum(antipode(w)), fmt_word):
            break
    if r.failure is None:
        for u, v in _sample_pairs(X, cfg):
            sign = -1 if (u.degree * v.degree) % 2 else 1
            rhs = {k: sign * c for k, c in mu_tensor_sums(antipode(v), antipode(u)).items()}
            if not r.check(f"S({fmt_word(u)}·{fmt_word(v)}) = ±S(v)S(u)", antipode(concat(u, v)),
                           _clean(rhs), fmt_word):
                break
    return r.result()


def mu_tensor_sums(a: dict, b: dict) -> dict:
    out: dict = defaultdict(int)
    for x, c in a.items():
        for y, d in b.items():
            if x.target == y.source:
                out[concat(x, y)] += c * d
    return _clean(out)


def suite_homotopy(X: Complex, cfg: VerifyConfig) -> SuiteResult:
    r = _Runner("homotopy")
    for s in simplices_upto(X, min(cfg.max_dim, 3)):
        try:
            defect = homotopy_defect(s)
        except HomotopyNotFound as e:
            r.checked += 1
            r.failure = (f"D h {fmt_simplex(s)} + h ∂{fmt_simplex(s)} = chi − rho",
                         "no homotopy found", str(e))
            break
        if not r.check(f"D h {fmt_simplex(s)} + h ∂{fmt_simplex(s)} = chi − rho", defect, {}):
            break
    return r.result()


def suite_theta(X: Complex, cfg: VerifyConfig) -> SuiteResult:
    r = _Runner("theta")
    if not cfg.collapse:
        return SuiteResult("theta", False, 0, "input", "a collapse set is required", "")
    q = quotient_chains(X, cfg.collapse, require_reduced=True)

    def theta(a: dict) -> dict:
        out: dict = defaultdict(int)
        for n, c in a.items():
            for e, x in theta_pi_raw(n, q).items():
                out[e] += c * x
        return _clean(out)

    def dq(a: dict) -> dict:
        out: dict = defaultdict(int)
        for e, c in a.items():
            for m, x in coch_D_raw(e, q).items():
                out[m] += c * x
        return _clean(out)

    for n in range(1, cfg.weight + 1):
        for b in weight_basis(X, n, cfg.weight):
            if not r.check(f"theta D {b} = D theta {b}", theta(D_raw(b)), dq(theta({b: 1}))):
                return r.result()
    return r.result()


SUITES: dict[str, Callable[[Complex, VerifyConfig], SuiteResult]] = {
    "chainmap-rho": suite_chainmap_rho,
    "chainmap-chi": suite_chainmap_chi,
    "d2": suite_d2,
    "D2": suite_D2,
    "hopf": suite_hopf,
    "antipode": suite_antipode,
    "homotopy": suite_homotopy,
    "theta": suite_theta,
}


def run_suite(name: str, X: Complex, cfg: VerifyConfig = VerifyConfig()) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](X, cfg)
