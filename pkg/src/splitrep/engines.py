"""Incremental violation checkers driving the extremal searches.

Each engine holds a growable word and answers "does appending this letter
create a violation?" in amortized near-constant time. The check is
suffix-anchored: any violation created by an append has the final piece
of its witness factor ending at the new position, so only candidates
anchored there are examined. Engines support can_extend (pure check),
try_push (check and commit) and pop (undo), which is exactly what a
depth-first search needs.

Factor contents are keyed by their base-k integer value (exact, no
hashing collisions) via prefix value arrays, so dictionary lookups do the
occurrence bookkeeping:

  * disjoint-factor engine: earliest start of every length-n factor;
  * split/reversed engines: earliest end of every factor (for the cases
    where the suffix pins the repetition's period block), plus a "threat"
    table of exact strings whose later appearance as a suffix completes a
    violation (for the cases where the earlier piece pins the block).
"""

from __future__ import annotations

from .detect import GapConvention

_EMPTY: dict = {}


class DisjointFactorEngine:
    """No two disjoint occurrences of any single length-n factor.

    Tracks remaining occurrence capacity for the length-reachability bound:
    a factor with smallest period p fits at most ceil(n/p) occurrences, and
    once seen, all of them must start within n-1 positions of the first.
    Capacity that can no longer be used (expired windows) is forfeited, so
    max_reachable_length() is a certified bound for the current branch.
    """

    def __init__(self, k: int, n: int):
        if k < 1 or n < 1:
            raise ValueError("need k >= 1 and n >= 1")
        self.k = k
        self.n = n
        self.kn = k ** n
        self.word: list[int] = []
        self.grams: list[int] = []     # value of the last n symbols, per depth
        self.earliest: dict[int, int] = {}
        self.caps = self._gram_caps()
        self.remaining: dict[int, int] = {}  # live seen grams -> occurrences left
        self.unseen_total = sum(self.caps)
        self.live_total = 0
        self.expiry: dict[int, list[int]] = {}  # length at which grams go dead
        self.trail: list[tuple[int | None, list[tuple[int, int]]]] = []

    def _gram_caps(self) -> list[int]:
        """cap[value] = ceil(n / per(word-of-value)) for every length-n word."""
        n = self.n
        k = self.k
        caps = []
        for value in range(self.kn):
            syms = []
            v = value
            for _ in range(n):
                syms.append(v % k)
                v //= k
            syms.reverse()
            table = [0] * n
            b = 0
            for i in range(1, n):
                while b > 0 and syms[i] != syms[b]:
                    b = table[b - 1]
                if syms[i] == syms[b]:
                    b += 1
                else:
                    b = 0
                table[i] = b
            p = n - table[-1]
            caps.append(-(-n // p))
        return caps

    def _gram(self, a: int) -> int | None:
        L = len(self.word)
        if L + 1 < self.n:
            return None
        if self.grams and L >= self.n:
            return (self.grams[-1] * self.k + a) % self.kn
        g = 0
        for s in self.word[L + 1 - self.n :]:
            g = g * self.k + s
        return g * self.k + a

    def can_extend(self, a: int) -> bool:
        g = self._gram(a)
        if g is None:
            return True
        e = self.earliest.get(g)
        return e is None or e > len(self.word) + 1 - 2 * self.n

    def try_push(self, a: int) -> bool:
        g = self._gram(a)
        if g is not None:
            e = self.earliest.get(g)
            if e is not None and e <= len(self.word) + 1 - 2 * self.n:
                return False
        self.word.append(a)
        ell = len(self.word)
        self.grams.append(g if g is not None else 0)
        # grams first seen at length ell - n die now: any further occurrence
        # would start >= earliest + n and be disjoint
        forfeits: list[tuple[int, int]] = []
        for x in self.expiry.get(ell, ()):
            rem = self.remaining.pop(x, None)
            if rem is not None:
                forfeits.append((x, rem))
                self.live_total -= rem
        new_gram = None
        consumed = None
        if g is not None:
            if g not in self.earliest:
                new_gram = g
                self.earliest[g] = ell - self.n
                cap = self.caps[g]
                self.unseen_total -= cap
                if cap > 1:
                    self.remaining[g] = cap - 1
                    self.live_total += cap - 1
                    self.expiry.setdefault(ell + self.n, []).append(g)
            else:
                # a repeat is overlapping, hence live with remaining >= 1
                consumed = g
                rem = self.remaining[g] - 1
                self.live_total -= 1
                if rem:
                    self.remaining[g] = rem
                else:
                    del self.remaining[g]
        self.trail.append((new_gram, consumed, forfeits))
        return True

    def pop(self) -> None:
        self.word.pop()
        ell = len(self.word) + 1  # the length the undone push had created
        self.grams.pop()
        new_gram, consumed, forfeits = self.trail.pop()
        if consumed is not None:
            self.remaining[consumed] = self.remaining.get(consumed, 0) + 1
            self.live_total += 1
        if new_gram is not None:
            g = new_gram
            del self.earliest[g]
            cap = self.caps[g]
            self.unseen_total += cap
            if cap > 1:
                self.live_total -= cap - 1
                del self.remaining[g]
                bucket = self.expiry[ell + self.n]
                bucket.pop()
                if not bucket:
                    del self.expiry[ell + self.n]
        for x, rem in forfeits:
            self.remaining[x] = rem
            self.live_total += rem

    def max_reachable_length(self) -> int:
        """Certified bound on the length of any extension of the current word."""
        return (
            max(len(self.word), self.n - 1) + self.unseen_total + self.live_total
        )


class SplitOverlapEngine:
    """No split (or, in reversed mode, reversed split) occurrence of a t-overlap.

    A violation is either a contiguous t-overlap factor, or nonempty
    factors x before z with gap >= min_gap whose concatenation x.z
    (z.x in reversed mode) is a t-overlap. With t = 0 the check
    degenerates to "some suffix already occurred with an admissible gap".
    """

    def __init__(
        self,
        k: int,
        t: int,
        convention: GapConvention = GapConvention.EMPTY_OK,
        reversed_mode: bool = False,
    ):
        if k < 1 or t < 0:
            raise ValueError("need k >= 1 and t >= 0")
        self.k = k
        self.t = t
        self.mg = convention.min_gap
        self.convention = convention
        self.rev = reversed_mode
        self.mmin = max(t, 1)
        self.word: list[int] = []
        self.pos: list[list[int]] = [[] for _ in range(k)]
        self.runs: list[dict[int, int]] = []   # per position: m -> run length
        self.pref: list[int] = [0]             # pref[i] = value of word[:i], base k
        self.powk: list[int] = [1]
        self.fdicts: list[dict[int, int]] = [{}, {}]   # factor value -> earliest end
        self.fd_trail: list[list[tuple[int, int]]] = []
        self.tdicts: list[dict[int, int]] = [{}]       # threat value -> earliest x end
        self.td_trail: list[list[tuple[int, int]]] = []
        self.active_tlens: dict[int, int] = {}          # live threat lengths

    def _powk_to(self, q: int) -> list[int]:
        powk = self.powk
        while len(powk) <= q:
            powk.append(powk[-1] * self.k)
        return powk

    def _row(self, a: int) -> dict[int, int]:
        """Run lengths ending at the would-be new position for each period m."""
        L = len(self.word)
        row: dict[int, int] = {}
        prev = self.runs[-1] if self.runs else _EMPTY
        prevget = prev.get
        for p in self.pos[a]:
            m = L - p
            row[m] = prevget(m, 0) + 1
        return row

    def _violates(self, a: int, row: dict[int, int]) -> bool:
        word = self.word
        L = len(word)
        ell = L + 1
        t = self.t
        mg = self.mg
        k = self.k
        pref = self.pref
        powk = self._powk_to(ell + 1)
        mmin = self.mmin
        for m, r in row.items():
            if m >= mmin and r >= m + t:
                return True          # contiguous t-overlap at the end
        pL = pref[L]
        if t == 0:
            fdicts = self.fdicts
            qmax = min(L - mg, len(fdicts) - 1)
            for q in range(1, qmax + 1):
                v = (pL - pref[ell - q] * powk[q - 1]) * k + a
                e = fdicts[q].get(v)
                if e is not None and e <= L - q - mg:
                    return True
            return False
        tdicts = self.tdicts
        for q in self.active_tlens:
            if q > L - mg:
                continue
            v = (pL - pref[ell - q] * powk[q - 1]) * k + a
            e = tdicts[q].get(v)
            if e is not None and e <= L - q - mg:
                return True
        fdicts = self.fdicts
        nfd = len(fdicts)
        if not self.rev:
            # z = suffix V.P.P[:t] with period m; x = P[:m-g] seen earlier
            for m, r in row.items():
                if r < t or m < mmin or ell < 2 * m + t + mg:
                    continue
                base = pref[ell - m - t]
                for g in range(min(r - t, m - 1) + 1):
                    s = m - g
                    if s < nfd:
                        v = pref[ell - t - g] - base * powk[s]
                        e = fdicts[s].get(v)
                        if e is not None and e <= L - m - t - g - mg:
                            return True
        else:
            # z = periodic suffix of length s > m pinning Q; x = Q[s-m:] seen earlier
            for m, r in row.items():
                if m < mmin or ell < 2 * m + t + mg:
                    continue
                for s in range(m + 1, min(m + r, 2 * m + t - 1) + 1):
                    xlen = 2 * m + t - s
                    if xlen >= nfd:
                        continue
                    zstart = ell - s
                    v2 = pref[zstart + t] - pref[zstart] * powk[t]
                    if s <= 2 * m:
                        v1 = pref[ell + m - s] - pref[ell - m] * powk[2 * m - s]
                        v = v1 * powk[t] + v2
                    else:
                        v = pref[zstart + t] - pref[ell - 2 * m] * powk[xlen]
                    e = fdicts[xlen].get(v)
                    if e is not None and e <= L - s - mg:
                        return True
        return False

    def can_extend(self, a: int) -> bool:
        return not self._violates(a, self._row(a))

    def try_push(self, a: int) -> bool:
        row = self._row(a)
        if self._violates(a, row):
            return False
        word = self.word
        L = len(word)
        ell = L + 1
        t = self.t
        pref = self.pref
        powk = self._powk_to(ell + 1)
        word.append(a)
        self.pos[a].append(L)
        self.runs.append(row)
        pref.append(pref[L] * self.k + a)
        fdicts = self.fdicts
        while len(fdicts) <= ell:
            fdicts.append({})
        ftrail = []
        pe = pref[ell]
        for q in range(1, ell + 1):
            v = pe - pref[ell - q] * powk[q]
            d = fdicts[q]
            if v not in d:
                d[v] = L
                ftrail.append((q, v))
        self.fd_trail.append(ftrail)
        ttrail: list[tuple[int, int]] = []
        if t > 0:
            tdicts = self.tdicts
            active = self.active_tlens
            mmin = self.mmin
            if not self.rev:
                # x = P.P[:c] ending here arms the exact string (P.P[:t])[c:]
                for m, r in row.items():
                    if m < mmin:
                        continue
                    for c in range(1, min(r, m + t - 1, L - m + 1) + 1):
                        if c <= m:
                            q = m - c + t
                            v1 = pref[L - c + 1] - pref[L - m + 1] * powk[m - c]
                            v2 = (
                                pref[L - m - c + 1 + t]
                                - pref[L - m - c + 1] * powk[t]
                            )
                            v = v1 * powk[t] + v2
                        else:
                            q = m + t - c
                            v = (
                                pref[L - m - c + t + 1]
                                - pref[L - 2 * m + 1] * powk[q]
                            )
                        while len(tdicts) <= q:
                            tdicts.append({})
                        d = tdicts[q]
                        if v not in d:
                            d[v] = L
                            ttrail.append((q, v))
                            active[q] = active.get(q, 0) + 1
            else:
                # x = Q[s:].Q ending here arms the exact string Q[:s]
                for m, r in row.items():
                    if m < mmin or r < t:
                        continue
                    start = L - m - t + 1
                    for s in range(max(1, m + t - r, 2 * m + t - 1 - L), m + 1):
                        if start < 0 or L - (2 * m + t - s) + 1 < 0:
                            continue
                        v = pref[start + s] - pref[start] * powk[s]
                        while len(tdicts) <= s:
                            tdicts.append({})
                        d = tdicts[s]
                        if v not in d:
                            d[v] = L
                            ttrail.append((s, v))
                            active[s] = active.get(s, 0) + 1
        self.td_trail.append(ttrail)
        return True

    def pop(self) -> None:
        a = self.word.pop()
        self.pos[a].pop()
        self.runs.pop()
        self.pref.pop()
        fdicts = self.fdicts
        for q, v in self.fd_trail.pop():
            del fdicts[q][v]
        tdicts = self.tdicts
        active = self.active_tlens
        for q, v in self.td_trail.pop():
            del tdicts[q][v]
            c = active[q] - 1
            if c:
                active[q] = c
            else:
                del active[q]
