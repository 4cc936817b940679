"""Fock spaces of the A, B and D free fermions, built from Clifford mode relations alone.

Conventions (each algebra's own indexing):
  A:  phi(z) = sum phi_n z^n,  psi(z) = sum psi_n z^n,  {phi_m, psi_n} = delta_{m+n,-1};
      phi_n, psi_n with n >= 0 create.
  B:  phi(z) = sum phi_n z^n,  {phi_m, phi_n} = 2 (-1)^m delta_{m,-n};  n >= 0 create, phi_0^2 = 1.
  D:  phi(z) = sum_{n in Z+1/2} phi_n z^(-n-1/2),  {phi_m, phi_n} = delta_{m,-n};  n < 0 create.
      Half-integer indices are stored doubled, so phi_{-1/2} has index -1.
"""
from __future__ import annotations

from fractions import Fraction

from ..rational import eps


class Clifford:
    """Mode algebra of one fermion type."""

    def __init__(self, kind: str):
        if kind not in ("A", "B", "D"):
            raise ValueError(f"unknown fermion type {kind!r}")
        self.kind = kind
        self.symbols = ("phi", "psi") if kind == "A" else ("phi",)

    # modes are (symbol, index)
    def creates(self, mode) -> bool:
        return mode[1] < 0 if self.kind == "D" else mode[1] >= 0

    def anticomm(self, a, b):
        (sa, i), (sb, j) = a, b
        if self.kind == "A":
            return 1 if sa != sb and i + j == -1 else 0
        if self.kind == "B":
            return 2 * (-1) ** (i % 2) if i == -j else 0
        return 1 if i == -j else 0

    def exponent(self, mode) -> int:
        """Power of z multiplying the mode in its field."""
        i = mode[1]
        return (-i - 1) // 2 if self.kind == "D" else i

    def mode_at(self, symbol, e):
        """The mode multiplying z^e in the field of ``symbol``."""
        return (symbol, -2 * e - 1) if self.kind == "D" else (symbol, e)

    def partners(self, mode):
        """Modes with a nonzero anticommutator against ``mode``."""
        s, i = mode
        if self.kind == "A":
            return [("psi" if s == "phi" else "phi", -1 - i)]
        return [(s, -i)]

    def _rank(self, mode):
        # canonical words list creators in descending order of this key
        return (self.symbols.index(mode[0]), abs(mode[1]))

    # action on states -------------------------------------------------
    def apply(self, mode, state: dict) -> dict:
        """mode * state, with ``state`` a dict {canonical word: coefficient}."""
        out = {}
        for word, c in state.items():
            for w, s in self._apply_word(mode, word).items():
                v = out.get(w, 0) + c * s
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return out

    def _apply_word(self, mode, word):
        if not word:
            return {} if not self.creates(mode) else {(mode,): 1}
        first, rest = word[0], word[1:]
        if self.creates(mode):
            if self._rank(mode) > self._rank(first):
                return {(mode,) + word: 1}
            if mode == first:
                sq = Fraction(self.anticomm(mode, mode), 2)
                return {rest: sq} if sq else {}
        out = {}
        ac = self.anticomm(mode, first)
        if ac:
            out[rest] = ac
        for w, s in self._apply_word(mode, rest).items():
            k = (first,) + w if not w or self._rank(first) > self._rank(w[0]) else None
            if k is None:
                # first re-enters an already sorted word
                for w2, s2 in self._apply_word(first, w).items():
                    out[w2] = out.get(w2, 0) - s * s2
            else:
                out[k] = out.get(k, 0) - s
        return {w: c for w, c in out.items() if c}

    def apply_word(self, modes, state=None):
        """modes[0] * modes[1] * ... * state (rightmost mode acts first)."""
        cur = {(): 1} if state is None else state
        for m in reversed(modes):
            cur = self.apply(m, cur)
        return cur

    def normal_pair(self, a, b):
        """The modes of :a b: as a product (sign, left, right)."""
        if not self.creates(a):
            return -1, b, a
        return 1, a, b

    def apply_normal(self, a, b, state):
        s, x, y = self.normal_pair(a, b)
        out = self.apply(x, self.apply(y, state))
        return {w: c * s for w, c in out.items()}

    def word_weight(self, word):
        return max((abs(m[1]) for m in word), default=0)


def scale_factor(tpow, e, N):
    """Coefficient picked up by z^e under z -> eps^tpow z."""
    return eps(tpow * e, N) if tpow else 1


def field_states(cl: Clifford, fields, window: int, N: int = 2):
    """phi_1(z_1) ... phi_k(z_k)|0> as {(exps, word): coefficient}, every exponent in [-C, C].

    ``fields`` are ``(symbol, tpow)``; ``tpow`` substitutes z -> eps^tpow z.  States that can no
    longer return to the vacuum are kept: callers reading vacuum coefficients use ``fock_vev``.
    """
    return _run(cl, fields, window, N, vacuum_only=False)


def _run(cl, fields, window, N, vacuum_only):
    C = window
    k = len(fields)
    cur = {((), ()): 1}
    for pos in range(k - 1, -1, -1):
        sym, tpow = fields[pos]
        remaining = pos   # fields still to act after this one
        left_syms = {fields[i][0] for i in range(pos)}
        nxt = {}
        for (exps, word), c in cur.items():
            for e in range(-C, C + 1):
                m = cl.mode_at(sym, e)
                f = scale_factor(tpow, e, N)
                for w, s in cl._apply_word(m, word).items():
                    if vacuum_only:
                        if len(w) > remaining:
                            continue
                        if not all(_removable(cl, x, C, left_syms) for x in w):
                            continue
                    key = ((e,) + exps, w)
                    v = nxt.get(key, 0) + c * s * f
                    if v:
                        nxt[key] = v
                    else:
                        nxt.pop(key, None)
        cur = nxt
    return cur


def _removable(cl, mode, C, syms):
    # the only modes that can remove `mode` are its partners, or itself when it squares to a scalar
    if cl.anticomm(mode, mode):
        return True
    for p in cl.partners(mode):
        if p[0] in syms and -C <= cl.exponent(p) <= C:
            return True
    return False


def fock_vev(cl: Clifford, fields, window: int, N: int = 2):
    """<0| phi_1(z_1) ... phi_k(z_k) |0> on exponents [-C, C]^k, as {exps: coefficient}."""
    out = {}
    for (exps, word), c in _run(cl, fields, window, N, vacuum_only=True).items():
        if not word:
            out[exps] = out.get(exps, 0) + c
    return {e: c for e, c in out.items() if c}
