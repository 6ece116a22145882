"""Virasoro highest-weight modules with exact arithmetic.

Implements Verma modules V(c, h) and the vacuum quotient Vbar(c, 0) =
V(c, 0)/U(Vir)L_{-1}v over exact rationals: PBW bases, straightened L_n
action, the contravariant (Shapovalov) form, singular vectors and c = 1
character series.

Conventions
-----------
* [L_m, L_n] = (m - n) L_{m+n} + delta_{m+n,0} (m^3 - m)/12 * c.
* A basis monomial is a descending tuple (m_1 >= ... >= m_s) standing for
  L_{-m_1} ... L_{-m_s} v; parts >= 1 for Verma, >= 2 for the vacuum quotient.
* The contravariant form takes L_n adjoint to L_{-n} and <v, v> = 1.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from .core import (
    ONE,
    SparseVec,
    ZERO,
    _accumulate,
    _add_term,
    null_space,
    partition_count,
    partitions,
    rank,
)

VirMonomial = tuple  # descending tuple of positive ints


class VirasoroModule:
    """Highest-weight module for the Virasoro algebra at central charge c.

    vacuum=False: the Verma module V(c, h).
    vacuum=True: the vacuum quotient Vbar(c, 0); requires h == 0. Canonical
    monomials then have all parts >= 2, and straightening drops any monomial
    with a part 1 (those span the submodule generated by L_{-1}v).
    """

    def __init__(self, c, h=0, vacuum: bool = False):
        self.c = Fraction(c)
        self.h = Fraction(h)
        self.vacuum = bool(vacuum)
        if self.vacuum and self.h:
            raise ValueError("vacuum quotient requires h = 0")
        self.min_part = 2 if self.vacuum else 1
        self._act_memo: dict = {}

    _instances: dict = {}
    _instances_lock = threading.Lock()

    @classmethod
    def get(cls, c, h=0, vacuum: bool = False) -> "VirasoroModule":
        """Shared instance per (c, h, vacuum); memo caches are per instance."""
        key = (Fraction(c), Fraction(h), bool(vacuum))
        with cls._instances_lock:
            inst = cls._instances.get(key)
            if inst is None:
                inst = cls(*key[:2], vacuum=key[2])
                cls._instances[key] = inst
            return inst

    # -- basis ------------------------------------------------------------

    def basis(self, level: int) -> list[VirMonomial]:
        """Canonical monomials at the given level, descending-lex order."""
        if level < 0:
            return []
        return list(partitions(level, self.min_part))

    def dim(self, level: int) -> int:
        return len(self.basis(level))

    def level(self, mono: VirMonomial) -> int:
        return sum(mono)

    def weight(self, mono: VirMonomial) -> Fraction:
        return self.h + sum(mono)

    # -- action -----------------------------------------------------------

    def act(self, n: int, v) -> SparseVec:
        """Apply L_n to a vector (or a single monomial), fully straightened."""
        if isinstance(v, SparseVec):
            out: dict = {}
            for mono, coef in v.items():
                _accumulate(out, self._act(n, mono), coef)
            return SparseVec._raw(out)
        return SparseVec._raw(dict(self._act(n, v)))

    def apply_word(self, word, v) -> SparseVec:
        """Apply L_{n_1} ... L_{n_r} (rightmost mode first) to a vector."""
        out = v if isinstance(v, SparseVec) else SparseVec.unit(v)
        for n in reversed(list(word)):
            out = self.act(n, out)
        return out

    def _act(self, n: int, mono: VirMonomial) -> dict:
        if n > sum(mono):
            return {}
        key = (n, mono)
        memo = self._act_memo
        hit = memo.get(key)
        if hit is not None:
            return hit
        if not mono:
            if n > 0:
                out = {}
            elif n == 0:
                out = {(): self.h} if self.h else {}
            else:
                a = -n
                out = {} if (self.vacuum and a == 1) else {(a,): ONE}
        else:
            a = mono[0]
            rest = mono[1:]
            if n <= -a:
                out = {(-n,) + mono: ONE}
            else:
                out = {}
                for inner, coef in self._act(n, rest).items():
                    _accumulate(out, self._act(-a, inner), coef)
                _accumulate(out, self._act(n - a, rest), Fraction(n + a))
                if n == a:
                    central = Fraction(n**3 - n, 12) * self.c
                    if central:
                        _add_term(out, rest, central)
        memo[key] = out
        return out

    # -- contravariant form -------------------------------------------------

    def pair(self, u, v) -> Fraction:
        """Contravariant form <u, v> with L_n adjoint to L_{-n}, <v, v> = 1."""
        if not isinstance(u, SparseVec):
            u = SparseVec.unit(u)
        if not isinstance(v, SparseVec):
            v = SparseVec.unit(v)
        total = ZERO
        for mono, coef in u.items():
            w = v
            for part in mono:
                w = self.act(part, w)
                if w.is_zero():
                    break
            total += coef * w.coeff(())
        return total

    def gram(self, level: int) -> list[list[Fraction]]:
        """Contravariant Gram matrix at a level, rows/cols in basis order."""
        basis = self.basis(level)
        units = [SparseVec.unit(b) for b in basis]
        return [[self.pair(units[i], units[j]) for j in range(len(basis))]
                for i in range(len(basis))]

    def gram_nullity(self, level: int) -> int:
        g = self.gram(level)
        if not g:
            return 0
        return len(g) - rank(g)

    def gram_rank(self, level: int) -> int:
        g = self.gram(level)
        if not g:
            return 0
        return rank(g)

    # -- singular vectors ---------------------------------------------------

    def singular_vectors(self, level: int) -> list[SparseVec]:
        """Basis of {x at the level : L_1 x = L_2 x = 0}, deterministic."""
        basis = self.basis(level)
        if not basis:
            return []
        rows: list[list[Fraction]] = []
        for n in (1, 2):
            target = self.basis(level - n)
            images = [self.act(n, b) for b in basis]
            for t in target:
                rows.append([img.coeff(t) for img in images])
        if not rows:
            rows = [[ZERO] * len(basis)]
        out = []
        for coords in null_space(rows):
            out.append(SparseVec({basis[j]: c for j, c in enumerate(coords) if c}))
        return out


# ---------------------------------------------------------------------------
# characters (integer q-series, coefficients at q^0 .. q^cutoff)


def is_perfect_square(x) -> bool:
    x = Fraction(x)
    if x < 0 or x.denominator != 1:
        return False
    n = x.numerator
    return math.isqrt(n) ** 2 == n


def _require_integral_weight(h) -> int:
    h = Fraction(h)
    if h.denominator != 1 or h < 0:
        if h.denominator == 4 and is_perfect_square(4 * h):
            m = math.isqrt((4 * h).numerator)
            raise ValueError(
                f"lowest weight {h} = ({m}/2)^2 is a quarter-square with odd {m}; "
                "this family is degenerate and its series is not supported")
        raise ValueError(f"lowest weight {h} does not give an integer-graded series")
    return h.numerator


def verma_character(h, cutoff: int) -> list[int]:
    """Coefficients of q^h / phi(q) at q^0..q^cutoff (integer h >= 0)."""
    h = _require_integral_weight(h)
    return [partition_count(j - h) if j >= h else 0 for j in range(cutoff + 1)]


def irreducible_character_c1(h, cutoff: int) -> list[int]:
    """Coefficients of ch L(1, h) at q^0..q^cutoff for integer h >= 0.

    For h = m^2 this is (q^{m^2} - q^{(m+1)^2})/phi(q); for non-square h the
    Verma character q^h/phi(q) (the module is already irreducible).
    """
    h = _require_integral_weight(h)
    out = [partition_count(j - h) if j >= h else 0 for j in range(cutoff + 1)]
    if is_perfect_square(h):
        m = math.isqrt(h)
        sub = (m + 1) ** 2
        for j in range(sub, cutoff + 1):
            out[j] -= partition_count(j - sub)
    return out


def char_series(label, cutoff: int) -> list[int]:
    """Dispatch on a module descriptor: ("verma", h) or ("l1", h)."""
    kind, h = label
    if kind == "verma":
        return verma_character(h, cutoff)
    if kind == "l1":
        return irreducible_character_c1(h, cutoff)
    raise ValueError(f"unknown module descriptor {label!r}")


# ---------------------------------------------------------------------------
# formatting helpers shared with the CLI


def monomial_str(mono: VirMonomial) -> str:
    if not mono:
        return "1"
    return "".join(f"L({-m})" for m in mono)


def vector_str_terms(v: SparseVec) -> dict[str, str]:
    """Deterministic string form: monomials in descending-lex order."""
    keys = sorted(v.keys(), reverse=True)
    return {monomial_str(k): str(v.coeff(k)) for k in keys}


# ---------------------------------------------------------------------------
# named verification suite: reducibility of V(1, m^2)


def verify_prop21(ms=(0, 1, 2), max_level: int = 5) -> dict:
    """Check that V(1, m^2) first becomes degenerate exactly at level 2m+1
    and that Gram ranks reproduce the irreducible character of L(1, m^2).

    Returns a report dict with named checks; report["pass"] is True iff all
    checks pass.
    """
    ms = tuple(ms)
    checks: list[dict] = []

    def add(name, source, expected, computed, ok, **extra):
        entry = {"name": name, "source": source, "expected": expected,
                 "computed": computed, "pass": bool(ok)}
        entry.update(extra)
        checks.append(entry)

    for m in ms:
        module = VirasoroModule.get(1, m * m)
        threshold = 2 * m + 1
        nullities = [module.gram_nullity(lv) for lv in range(1, max_level + 1)]

        below = nullities[:min(threshold - 1, max_level)]
        add(f"nullity-below-threshold-m{m}", "PAPER",
            ",".join("0" for _ in below) or "(none)",
            ",".join(str(x) for x in below) or "(none)",
            all(x == 0 for x in below),
            levels=list(range(1, len(below) + 1)))

        if threshold <= max_level:
            add(f"nullity-at-threshold-m{m}", "PAPER", "1",
                str(nullities[threshold - 1]),
                nullities[threshold - 1] == 1, level=threshold)

        ranks = [module.gram_rank(lv) for lv in range(0, max_level + 1)]
        char = irreducible_character_c1(m * m, m * m + max_level)
        expected_ranks = char[m * m: m * m + max_level + 1]
        add(f"rank-equals-irreducible-character-m{m}", "DERIVED",
            ",".join(str(x) for x in expected_ranks),
            ",".join(str(x) for x in ranks),
            ranks == expected_ranks, levels=list(range(0, max_level + 1)))

    # converse direction: a non-square lowest weight stays nondegenerate
    nonsq = VirasoroModule.get(1, 2)
    nullities = [nonsq.gram_nullity(lv) for lv in range(1, max_level + 1)]
    add("nonsquare-weight-nondegenerate-h2", "DERIVED",
        ",".join("0" for _ in nullities),
        ",".join(str(x) for x in nullities),
        all(x == 0 for x in nullities))

    return {
        "suite": "prop21",
        "params": {"ms": list(ms), "max_level": max_level, "c": "1"},
        "checks": checks,
        "pass": all(ch["pass"] for ch in checks),
    }
