"""Exact sparse multivariate polynomial arithmetic over Q and resultants.

Coefficients are arbitrary-precision rationals (fractions.Fraction), monomials
are sparse exponent vectors over registered symbols.  This is the engine under
every elimination step of the volume-relation pipeline, so there is some care
about which resultant strategy runs: direct formulas when one argument is
linear or quadratic in the eliminated variable, minor expansion for tiny
Sylvester matrices, fraction-free Bareiss in general, and an
evaluation/interpolation route when the Sylvester entries involve at most one
further variable.  All strategies compute the same Sylvester determinant and
are cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, inf

NEG_INF = -inf


class PolyError(Exception):
    """Invalid polynomial operation (zero content, inexact division, ...)."""


_work_monitor = None
_tick_count = 0
_TICK_EVERY = 2_000


def set_work_monitor(callback):
    """Install a callback invoked periodically inside long computations
    (used by callers enforcing wall-clock budgets).  Pass None to clear."""
    global _work_monitor, _tick_count
    _work_monitor = callback
    _tick_count = 0


def _tick(amount: int):
    global _tick_count
    _tick_count += amount
    if _tick_count >= _TICK_EVERY:
        _tick_count = 0
        if _work_monitor is not None:
            _work_monitor()


@dataclass(frozen=True)
class VarSymbol:
    """A registered variable: squared length, diagonal, or volume unknown.

    kind is one of "l" (squared edge length), "d" (squared diagonal length),
    "V" (cycle volume), "W" (simplex volume being eliminated).  Length-like
    symbols are keyed by the unordered vertex pair, so l_{uv} == l_{vu} and the
    aliasing identities between diagonal labels (D_3 = d_1, ...) hold
    automatically.
    """

    kind: str
    key: tuple
    index: int

    @property
    def name(self) -> str:
        if self.key:
            return self.kind + "_" + "_".join(str(k) for k in self.key)
        return self.kind

    def __repr__(self) -> str:
        return self.name


class VarRegistry:
    """Assigns stable indices to symbols; index order drives the term order."""

    def __init__(self):
        self._by_key: dict[tuple, VarSymbol] = {}
        self._order: list[VarSymbol] = []

    def symbol(self, kind: str, key=()) -> VarSymbol:
        if kind in ("l", "d"):
            key = tuple(sorted(key))
            if len(key) != 2 or key[0] == key[1]:
                raise PolyError(f"length symbol needs two distinct vertices, got {key}")
        else:
            key = tuple(key)
        k = (kind, key)
        sym = self._by_key.get(k)
        if sym is None:
            sym = VarSymbol(kind, key, len(self._order))
            self._by_key[k] = sym
            self._order.append(sym)
        return sym

    def by_index(self, index: int) -> VarSymbol:
        return self._order[index]

    def var(self, kind: str, key=()) -> "MultiPoly":
        sym = self.symbol(kind, key)
        return MultiPoly(self, {((sym.index, 1),): Fraction(1)})

    def monomial_of(self, sym: VarSymbol) -> "MultiPoly":
        return MultiPoly(self, {((sym.index, 1),): Fraction(1)})

    def const(self, c) -> "MultiPoly":
        c = Fraction(c)
        return MultiPoly(self, {(): c} if c else {})

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(1)

    def __len__(self) -> int:
        return len(self._order)


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        ia, ea = a[i]
        ib, eb = b[j]
        if ia == ib:
            out.append((ia, ea + eb))
            i += 1
            j += 1
        elif ia < ib:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_degree(m: tuple) -> int:
    return sum(e for _, e in m)


def _mono_key(m: tuple, nvars: int):
    """Graded lexicographic sort key (higher key = larger monomial)."""
    dense = [0] * nvars
    for i, e in m:
        dense[i] = e
    return (_mono_degree(m), tuple(dense))


class MultiPoly:
    """Sparse multivariate polynomial over Q.

    Treated as immutable: all operations return fresh values.  terms maps a
    sparse exponent tuple ((var_index, exp), ...) to a nonzero Fraction.
    """

    __slots__ = ("reg", "terms")

    def __init__(self, reg: VarRegistry, terms: dict):
        self.reg = reg
        self.terms = terms

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def _coerce(reg, other):
        if isinstance(other, MultiPoly):
            if other.reg is not reg:
                raise PolyError("mixing polynomials from different registries")
            return other
        if isinstance(other, (int, Fraction)):
            return reg.const(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise PolyError("not a constant polynomial")
        return self.terms[()]

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        other = MultiPoly._coerce(self.reg, other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MultiPoly(self.reg, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.reg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = MultiPoly._coerce(self.reg, other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return self.reg.zero()
            return MultiPoly(self.reg, {m: v * c for m, v in self.terms.items()})
        other = MultiPoly._coerce(self.reg, other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return self.reg.zero()
        # iterate over the smaller operand outside
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        track = _work_monitor is not None
        out: dict = {}
        for ma, ca in a.items():
            if track:
                _tick(len(b))
            for mb, cb in b.items():
                m = _mono_mul(ma, mb)
                v = out.get(m)
                if v is None:
                    out[m] = ca * cb
                else:
                    v = v + ca * cb
                    if v:
                        out[m] = v
                    else:
                        del out[m]
        return MultiPoly(self.reg, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PolyError("negative power")
        result = self.reg.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.reg.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- structure queries ----------------------------------------------------

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for i, _ in m:
                out.add(self.reg.by_index(i))
        return out

    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return max(_mono_degree(m) for m in self.terms)

    def degree(self, v: VarSymbol):
        """Degree in v; NEG_INF for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        idx = v.index
        best = 0
        for m in self.terms:
            for i, e in m:
                if i == idx and e > best:
                    best = e
        return best

    def coeffs_in(self, v: VarSymbol) -> list:
        """Dense coefficient list [c_0, ..., c_deg] of self as a poly in v."""
        idx = v.index
        deg = self.degree(v)
        if deg is NEG_INF:
            return [self.reg.zero()]
        buckets: list[dict] = [dict() for _ in range(int(deg) + 1)]
        for m, c in self.terms.items():
            e = 0
            rest = []
            for i, ex in m:
                if i == idx:
                    e = ex
                else:
                    rest.append((i, ex))
            buckets[e][tuple(rest)] = c
        return [MultiPoly(self.reg, b) for b in buckets]

    def coefficient_of(self, mono_spec: dict) -> "MultiPoly":
        """Coefficient of the exact monomial {sym: exp} (a poly in the rest)."""
        want = {s.index: e for s, e in mono_spec.items() if e}
        idxs = set(want)
        out = {}
        for m, c in self.terms.items():
            got = {i: e for i, e in m if i in idxs}
            if got == want:
                rest = tuple((i, e) for i, e in m if i not in idxs)
                out[rest] = c
        return MultiPoly(self.reg, out)

    def leading_coefficient(self, v: VarSymbol) -> "MultiPoly":
        d = self.degree(v)
        if d is NEG_INF:
            return self.reg.zero()
        return self.coeffs_in(v)[int(d)]

    def _lead_mono(self) -> tuple:
        nv = len(self.reg)
        return max(self.terms, key=lambda m: _mono_key(m, nv))

    # -- substitution / evaluation --------------------------------------------

    def substitute(self, assignment: dict) -> "MultiPoly":
        """Substitute polynomials or rationals for symbols; partial maps fine."""
        subs = {}
        for sym, val in assignment.items():
            if isinstance(val, MultiPoly):
                subs[sym.index] = val
            else:
                subs[sym.index] = self.reg.const(val)
        if not subs:
            return self
        out = self.reg.zero()
        powers: dict = {}
        track = _work_monitor is not None
        for m, c in self.terms.items():
            if track:
                _tick(4)
            keep = []
            factor = None
            for i, e in m:
                if i in subs:
                    p = powers.get((i, e))
                    if p is None:
                        p = subs[i] ** e
                        powers[(i, e)] = p
                    factor = p if factor is None else factor * p
                else:
                    keep.append((i, e))
            term = MultiPoly(self.reg, {tuple(keep): c})
            if factor is not None:
                term = term * factor
            out = out + term
        return out

    def evaluate(self, assignment: dict) -> Fraction:
        """Full evaluation; every variable present must be assigned."""
        values = {s.index: Fraction(v) for s, v in assignment.items()}
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for i, e in m:
                if i not in values:
                    raise PolyError(f"unassigned variable {self.reg.by_index(i)}")
                v = v * values[i] ** e
            total += v
        return total

    # -- normalization ----------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators / lcm of denominators."""
        if not self.terms:
            raise PolyError("zero polynomial has no content")
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def normalize_content(self) -> "MultiPoly":
        """Divide by the content; sign fixed so the leading term is positive."""
        cont = self.content()
        if self.terms[self._lead_mono()] < 0:
            cont = -cont
        return MultiPoly(self.reg, {m: c / cont for m, c in self.terms.items()})

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact polynomial division; raises PolyError if not a multiple."""
        if divisor.is_zero():
            raise PolyError("division by zero polynomial")
        if divisor.is_constant():
            c = divisor.constant_value()
            return MultiPoly(self.reg, {m: v / c for m, v in self.terms.items()})
        dvars = divisor.variables()
        if len(dvars) == 1:
            return self._exact_div_univariate(divisor, next(iter(dvars)))
        import heapq

        nv = len(self.reg)

        def negkey(m):
            deg, dense = _mono_key(m, nv)
            return (-deg, tuple(-e for e in dense))

        rem = dict(self.terms)
        heap = [(negkey(m), m) for m in rem]
        heapq.heapify(heap)
        dl = divisor._lead_mono()
        dl_c = divisor.terms[dl]
        dl_exp = dict(dl)
        out: dict = {}
        while heap:
            _, rl = heapq.heappop(heap)
            if rl not in rem:
                continue
            q_exp = []
            rl_exp = dict(rl)
            ok = True
            for i, e in dl_exp.items():
                if rl_exp.get(i, 0) < e:
                    ok = False
                    break
            if not ok:
                raise PolyError("inexact polynomial division")
            for i, e in rl_exp.items():
                e2 = e - dl_exp.get(i, 0)
                if e2:
                    q_exp.append((i, e2))
            q_mono = tuple(sorted(q_exp))
            q_c = rem.pop(rl) / dl_c
            out[q_mono] = q_c
            if _work_monitor is not None:
                _tick(len(divisor.terms))
            for m, c in divisor.terms.items():
                if m == dl:
                    continue
                mm = _mono_mul(q_mono, m)
                v = rem.get(mm, Fraction(0)) - q_c * c
                if v:
                    if mm not in rem:
                        heapq.heappush(heap, (negkey(mm), mm))
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
        if rem:
            raise PolyError("inexact polynomial division")
        return MultiPoly(self.reg, out)

    def _exact_div_univariate(self, divisor: "MultiPoly", s: VarSymbol) -> "MultiPoly":
        """Division by a univariate divisor, done densely in that variable."""
        num = self.coeffs_in(s)
        den = [c.constant_value() for c in divisor.coeffs_in(s)]
        dd = len(den) - 1
        lead = den[dd]
        dn = len(num) - 1
        if dn < dd:
            if self.is_zero():
                return self.reg.zero()
            raise PolyError("inexact polynomial division")
        quot = [self.reg.zero()] * (dn - dd + 1)
        for k in range(dn - dd, -1, -1):
            q = num[k + dd] * (1 / lead)
            quot[k] = q
            if not q.is_zero():
                for i in range(dd + 1):
                    num[k + i] = num[k + i] - q * den[i]
        if any(not c.is_zero() for c in num):
            raise PolyError("inexact polynomial division")
        out = self.reg.zero()
        spow = self.reg.one()
        sv = self.reg.monomial_of(s)
        for k, c in enumerate(quot):
            if not c.is_zero():
                out = out + c * spow
            if k + 1 < len(quot):
                spow = spow * sv
        return out

    # -- printing -----------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        nv = len(self.reg)
        parts = []
        for m in sorted(self.terms, key=lambda m: _mono_key(m, nv), reverse=True):
            c = self.terms[m]
            mono = "*".join(
                f"{self.reg.by_index(i).name}^{e}" if e > 1 else self.reg.by_index(i).name
                for i, e in m
            )
            if mono:
                parts.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                parts.append(str(c))
        return " + ".join(parts)


# -- spec-level operation wrappers --------------------------------------------


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise PolyError(f"unknown op {op!r}")


def poly_pow(a: MultiPoly, k: int) -> MultiPoly:
    return a ** k


def degree_lc(a: MultiPoly, v: VarSymbol):
    """(degree in v, leading coefficient in v); (-inf, 0) for the zero poly."""
    d = a.degree(v)
    if d is NEG_INF:
        return NEG_INF, a.reg.zero()
    return int(d), a.coeffs_in(v)[int(d)]


def specialize(a: MultiPoly, assignment: dict) -> MultiPoly:
    """Substitute exact rationals for some variables; others remain."""
    return a.substitute({s: Fraction(v) for s, v in assignment.items()})


def normalize_content(a: MultiPoly) -> MultiPoly:
    return a.normalize_content()


# -- determinants of polynomial matrices ---------------------------------------


def det_matrix(rows: list, reg: VarRegistry) -> MultiPoly:
    """Determinant of a square MultiPoly matrix.

    Minor expansion for size <= 6, fraction-free Bareiss (exact divisions in
    the polynomial ring) beyond that.
    """
    n = len(rows)
    if n == 0:
        return reg.one()
    if any(len(r) != n for r in rows):
        raise PolyError("non-square matrix")
    if n <= 6:
        return _det_minor(rows, reg)
    return _det_bareiss(rows, reg)


def _det_minor(rows, reg):
    n = len(rows)
    cols = list(range(n))
    memo: dict = {}

    def minor(r: int, colmask: int) -> MultiPoly:
        if r == n:
            return reg.one()
        key = colmask
        got = memo.get(key)
        if got is not None:
            return got
        total = reg.zero()
        pos = 0
        for j in cols:
            bit = 1 << j
            if colmask & bit:
                continue
            entry = rows[r][j]
            if entry.terms:
                sub = minor(r + 1, colmask | bit)
                term = entry * sub
                total = total + (term if pos % 2 == 0 else -term)
            pos += 1
        memo[key] = total
        return total

    return minor(0, 0)


def _det_bareiss(rows, reg):
    n = len(rows)
    a = [list(r) for r in rows]
    sign = 1
    prev = reg.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            pivot_row = None
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    pivot_row = i
                    break
            if pivot_row is None:
                return reg.zero()
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev)
            a[i][k] = reg.zero()
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


# -- resultants -----------------------------------------------------------------


def sylvester_matrix(f: MultiPoly, g: MultiPoly, v: VarSymbol) -> list:
    """Sylvester matrix of f, g in v (deg g rows of f, deg f rows of g)."""
    m = f.degree(v)
    n = g.degree(v)
    if m is NEG_INF or n is NEG_INF:
        raise PolyError("resultant of a zero polynomial")
    m, n = int(m), int(n)
    if m == 0 and n == 0:
        raise PolyError("both polynomials constant in the variable")
    fc = f.coeffs_in(v)[::-1]  # leading first
    gc = g.coeffs_in(v)[::-1]
    reg = f.reg
    size = m + n
    zero = reg.zero()
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(fc):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(gc):
            row[i + j] = c
        rows.append(row)
    return rows


def resultant(f: MultiPoly, g: MultiPoly, v: VarSymbol) -> MultiPoly:
    """Sylvester resultant of f and g with respect to v.

    Vanishes iff f and g share a root in v over the algebraic closure (for
    nonzero leading coefficients).  Raises PolyError if both arguments are
    constant in v or either is the zero polynomial.
    """
    reg = f.reg
    if f.is_zero() or g.is_zero():
        raise PolyError("resultant of a zero polynomial")
    m = f.degree(v)
    n = g.degree(v)
    m = 0 if m is NEG_INF else int(m)
    n = 0 if n is NEG_INF else int(n)
    if m == 0 and n == 0:
        raise PolyError("both polynomials constant in the variable")
    if m == 0:
        return f ** n
    if n == 0:
        return g ** m
    # orient so the small-degree polynomial comes first; Res(f,g) = (-1)^(mn) Res(g,f)
    swap_sign = 1
    if m > n or (m == n and len(f.terms) > len(g.terms)):
        f, g, m, n = g, f, n, m
        if (m * n) % 2:
            swap_sign = -1
    if m == 1:
        res = _res_linear(f, g, v, n)
    elif m == 2:
        res = _res_quadratic(f, g, v, n)
    else:
        res = _res_general(f, g, v)
    return res if swap_sign > 0 else -res


def _res_linear(f, g, v, n):
    # f = a*v + b:  Res(f, g) = a^n * g(-b/a) = sum g_k (-b)^k a^(n-k)
    fc = f.coeffs_in(v)
    b, a = fc[0], fc[1]
    gc = g.coeffs_in(v)
    reg = f.reg
    out = reg.zero()
    apow = [reg.one()]
    bpow = [reg.one()]
    for _ in range(n):
        apow.append(apow[-1] * a)
        bpow.append(bpow[-1] * (-b))
    for k, c in enumerate(gc):
        if c.is_zero():
            continue
        out = out + c * bpow[k] * apow[n - k]
    return out


def _res_quadratic(f, g, v, n):
    # f = alpha v^2 + beta v + gamma:  Res(f,g) = alpha^n g(r1) g(r2)
    #                                = (a^2 gamma - a b beta + alpha b^2) / alpha^(n-1)
    # where alpha^(n-1) g = q f + (a v + b).
    fc = f.coeffs_in(v)
    gamma, beta, alpha = fc[0], fc[1], fc[2]
    gc = g.coeffs_in(v)[::-1]  # leading first, length n+1
    # pseudo-reduce g mod f, scaling by alpha each step
    work = list(gc)
    steps = 0
    while len(work) > 2:
        lead = work[0]
        rest = [alpha * c for c in work[1:]]
        rest[0] = rest[0] - lead * beta
        rest[1] = rest[1] - lead * gamma
        work = rest
        steps += 1
    while len(work) < 2:
        work.insert(0, f.reg.zero())
    a, b = work[0], work[1]
    # account for skipped scalings if g had degree < n nominally (it doesn't here)
    scale_deficit = (n - 1) - steps
    if scale_deficit:
        mult = alpha ** scale_deficit
        a = a * mult
        b = b * mult
    num = a * a * gamma - a * b * beta + alpha * b * b
    if n == 1:
        return num
    return num.exact_div(alpha ** (n - 1))


def _res_general(f, g, v):
    rows = sylvester_matrix(f, g, v)
    reg = f.reg
    size = len(rows)
    # entries in at most one variable besides v -> evaluation/interpolation
    other = set()
    for r in rows:
        for e in r:
            for mono in e.terms:
                for i, _ in mono:
                    other.add(i)
    if size > 6 and len(other) == 1:
        t = reg.by_index(next(iter(other)))
        res = _res_interp(f, g, v, t)
        if res is not None:
            return res
    return det_matrix(rows, reg)


def _dense_int_matrix(coeffs, t):
    """(rows, scale): rows[i][e] integer coefficient of t^e in coeff i, after
    multiplying everything by the common denominator `scale`."""
    den = 1
    for c in coeffs:
        for q in c.terms.values():
            den = den * q.denominator // gcd(den, q.denominator)
    dt = 0
    for c in coeffs:
        for mono in c.terms:
            e = mono[0][1] if mono else 0
            dt = max(dt, e)
    rows = []
    for c in coeffs:
        row = [0] * (dt + 1)
        for mono, q in c.terms.items():
            e = mono[0][1] if mono else 0
            row[e] = int(q * den)
        rows.append(row)
    return rows, den


def _horner_rows(rows, x):
    out = []
    for row in rows:
        acc = 0
        for c in reversed(row):
            acc = acc * x + c
        out.append(acc)
    return out


def _res_interp(f, g, v, t):
    """Resultant via evaluation at integer points of t and Newton interpolation.

    The Sylvester determinant has degree at most m*dg + n*df in t, where df/dg
    bound the t-degrees of the coefficient entries.  Points where a leading
    coefficient vanishes are skipped (there the resultant of the evaluated
    pair differs from the evaluated resultant); the all-points-good case runs
    entirely over the integers.
    """
    reg = f.reg
    m = int(f.degree(v))
    n = int(g.degree(v))
    fc = f.coeffs_in(v)
    gc = g.coeffs_in(v)
    df = max((int(c.degree(t)) for c in fc if not c.is_zero()), default=0)
    dg = max((int(c.degree(t)) for c in gc if not c.is_zero()), default=0)
    bound = n * df + m * dg

    frows, fden = _dense_int_matrix(fc, t)
    grows, gden = _dense_int_matrix(gc, t)
    # Res(fden*f, gden*g) = fden^n gden^m Res(f, g)
    unscale = Fraction(1, fden ** n * gden ** m)

    xs: list[int] = []
    ys: list[int] = []
    x = 0
    consecutive = True
    while len(xs) <= bound:
        if x > 4 * (bound + 2) + 64:
            return None
        if _work_monitor is not None and x % 16 == 0:
            _work_monitor()
        fx = _horner_rows(frows, x)
        gx = _horner_rows(grows, x)
        if fx[-1] == 0 or gx[-1] == 0:
            consecutive = False
            x += 1
            continue
        ys.append(_res_univ_int(fx, gx))
        xs.append(x)
        x += 1

    if consecutive:
        coeffs = [unscale * c for c in _newton_interp_int(ys)]
    else:
        coeffs = [
            unscale * c
            for c in _newton_interp([Fraction(x) for x in xs], [Fraction(y) for y in ys])
        ]
    out = reg.zero()
    tpow = reg.one()
    tv = reg.monomial_of(t)
    for k, c in enumerate(coeffs):
        if c:
            out = out + tpow * c
        if k + 1 < len(coeffs):
            tpow = tpow * tv
    return out


def _newton_interp_int(ys: list) -> list:
    """Monomial coefficients of the integer polynomial with values ys at
    x = 0, 1, ..., len(ys)-1 (all-integer arithmetic)."""
    k = len(ys)
    table = list(ys)
    newton = [table[0]]
    fact = 1
    for level in range(1, k):
        if _work_monitor is not None and level % 16 == 0:
            _work_monitor()
        for i in range(k - level):
            table[i] = table[i + 1] - table[i]
        fact *= level
        q, r = divmod(table[0], fact)
        if r:
            raise PolyError("interpolation data is not an integer polynomial")
        newton.append(q)
    # Horner over falling factorials with nodes 0, 1, 2, ...
    coeffs = [newton[k - 1]]
    for level in range(k - 2, -1, -1):
        new = [0] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            new[j + 1] += c
            new[j] -= level * c
        new[0] += newton[level]
        coeffs = new
    return coeffs


def _poly_deg_int(p):
    d = len(p) - 1
    while d >= 0 and p[d] == 0:
        d -= 1
    return d


def _prem_int(A, B, dA, dB):
    """Pseudo remainder lc(B)^(dA-dB+1) * A mod B over the integers."""
    lB = B[dB]
    e = dA - dB + 1
    R = list(A[: dA + 1])
    dR = dA
    while dR >= dB:
        if _work_monitor is not None:
            _tick(dB + 1)
        lead = R[dR]
        R = [c * lB for c in R]
        shift = dR - dB
        for i in range(dB + 1):
            R[shift + i] -= lead * B[i]
        e -= 1
        dR = _poly_deg_int(R[:dR])  # degree strictly dropped
        if dR < 0:
            break
    if e:
        scale = lB ** e
        R = [c * scale for c in R]
    return R[: max(dR + 1, 1)], dR


def _res_univ_int(F: list, G: list):
    """Resultant of integer polynomials (dense, constant first) via the
    subresultant pseudo-remainder sequence; all arithmetic over Z."""
    A = list(F)
    B = list(G)
    dA = _poly_deg_int(A)
    dB = _poly_deg_int(B)
    if dA < 0 or dB < 0:
        return 0
    s = 1
    if dA < dB:
        A, B, dA, dB = B, A, dB, dA
        if (dA * dB) % 2:
            s = -s
    g = 1
    h = 1
    while dB > 0:
        delta = dA - dB
        if (dA % 2) and (dB % 2):
            s = -s
        R, dR = _prem_int(A, B, dA, dB)
        if dR < 0:
            return 0
        divisor = g * h ** delta
        A, dA = B, dB
        B = [c // divisor for c in R]
        dB = dR
        g = A[dA]
        if delta == 1:
            h = g
        elif delta > 1:
            h = g ** delta // h ** (delta - 1)
    if dA == 0:
        return s  # both constants cannot happen for genuine resultants
    return s * (B[0] ** dA) // h ** (dA - 1)


def _res_univ(fc: list, gc: list) -> Fraction:
    """Resultant of univariate rational polynomials (dense, constant first)."""

    def deg(p):
        d = len(p) - 1
        while d >= 0 and p[d] == 0:
            d -= 1
        return d

    def rem(p, q):
        p = list(p)
        dq = deg(q)
        lq = q[dq]
        while True:
            dp = deg(p)
            if dp < dq:
                break
            c = p[dp] / lq
            shift = dp - dq
            for i in range(dq + 1):
                p[shift + i] -= c * q[i]
            p[dp] = Fraction(0)
        return p[: max(deg(p) + 1, 1)]

    f = list(fc)
    g = list(gc)
    df, dg = deg(f), deg(g)
    if df < 0 or dg < 0:
        return Fraction(0)
    sign = 1
    if df < dg:
        f, g, df, dg = g, f, dg, df
        if (df * dg) % 2:
            sign = -sign
    acc = Fraction(1)
    while True:
        if dg == 0:
            return sign * acc * g[0] ** df
        r = rem(f, g)
        dr = deg(r)
        if dr < 0:
            return Fraction(0)
        acc *= g[dg] ** (df - dr)
        if (df * dg) % 2:
            sign = -sign
        f, df = g, dg
        g, dg = r, dr


def _newton_interp(xs: list, ys: list) -> list:
    """Coefficients (constant first) of the interpolating polynomial."""
    k = len(xs)
    table = list(ys)
    newton = [table[0]]
    for level in range(1, k):
        for i in range(k - level):
            table[i] = (table[i + 1] - table[i]) / (xs[i + level] - xs[i])
        newton.append(table[0])
    # Horner unwind of p = (...(c_{k-1}(x - x_{k-2}) + c_{k-2})...)(x - x_0) + c_0
    coeffs = [newton[k - 1]]
    for level in range(k - 2, -1, -1):
        x0 = xs[level]
        new = [Fraction(0)] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            new[j + 1] += c
            new[j] -= x0 * c
        new[0] += newton[level]
        coeffs = new
    return coeffs
