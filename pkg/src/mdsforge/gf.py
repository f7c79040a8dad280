"""Exact arithmetic in finite fields F_{p^m}.

Elements are stored as canonical integer codes: the coefficient vector
``(c_0, ..., c_{m-1})`` of the polynomial basis read as a base-p number.  For
p = 2 the code is the usual polynomial bitmask, so x^4 + x + 1 is ``0x13``.

`Field` offers raw arithmetic on codes (fast path used by the matrix and
enumeration code).  `FieldElement` wraps a code together with its field for
callers that prefer operator syntax.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import DomainError, UsageError

# x^m + ... for GF(2^m), as bitmasks including the leading term.
DEFAULT_BINARY_MODULI = {
    1: 0x2,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
}

TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over Z_p, coefficient lists with the constant term first ---

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    df = len(f) - 1
    lead_inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        coef = a[-1] * lead_inv % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - coef * fc) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, f, p)


def _poly_powmod(a: list[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(list(a), f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over Z_p.

    Degree <= 3 reduces to a root search.  Larger degrees use the
    gcd(x^{p^k} - x, f) test over the maximal proper divisors k of m.
    """
    f = list(modulus)
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if m <= 3:
        for x in range(p):
            acc = 0
            for c in reversed(f):
                acc = (acc * x + c) % p
            if acc == 0:
                return False
        return True
    x = [0, 1]
    frob = [x]
    h = x
    for _ in range(m):
        h = _poly_powmod(h, p, f, p)
        frob.append(h)
    if _poly_sub(frob[m], x, p):
        return False
    for r in prime_factors(m):
        g = _poly_gcd(f, _poly_sub(frob[m // r], x, p), p)
        if len(g) > 1:
            return False
    return True


def code_to_coeffs(code: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        code, d = divmod(code, p)
        out.append(d)
    return out


def coeffs_to_code(coeffs: Sequence[int], p: int) -> int:
    code = 0
    for c in reversed(coeffs):
        code = code * p + c
    return code


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    for low in range(p**m):
        cand = code_to_coeffs(low, p, m) + [1]
        if cand[0] != 0 or m == 1:
            if is_irreducible(cand, p):
                return tuple(cand)
    raise DomainError(f"no irreducible polynomial of degree {m} over Z_{p}")


class Field:
    """The field F_{p^m} defined by a monic irreducible modulus.

    ``modulus`` is the full coefficient vector, constant term first, of
    length m + 1.  Two fields compare equal iff p, m and the modulus agree.
    """

    def __init__(self, p: int, m: int = 1, modulus: Optional[Sequence[int]] = None):
        if not is_prime(p):
            raise UsageError(f"characteristic {p} is not prime")
        if m < 1:
            raise UsageError(f"degree must be positive, got {m}")
        if p**m >= 1 << 64:
            raise UsageError(f"field order {p}^{m} does not fit in 64 bits")
        if modulus is None:
            if m == 1:
                modulus = (0, 1)
            elif p == 2 and m in DEFAULT_BINARY_MODULI:
                modulus = tuple(code_to_coeffs(DEFAULT_BINARY_MODULI[m], 2, m + 1))
            else:
                modulus = smallest_irreducible(p, m)
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != m + 1:
            raise UsageError(f"modulus must have {m + 1} coefficients, got {len(modulus)}")
        if any(not 0 <= c < p for c in modulus):
            raise UsageError(f"modulus coefficients must lie in [0, {p})")
        if modulus[-1] != 1:
            raise UsageError("modulus must be monic")
        if not is_irreducible(modulus, p):
            raise UsageError(f"modulus {modulus} is reducible over Z_{p}")

        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        self._mask = coeffs_to_code(modulus, p) if p == 2 else None
        self._exp: Optional[list[int]] = None
        self._log: Optional[list[int]] = None
        self._nonresidue: Optional[int] = None
        self.generator = None
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    # -- identity --------------------------------------------------------

    def _key(self):
        return (self.p, self.m, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Field({self.spec_string()!r})"

    @property
    def characteristic(self) -> int:
        return self.p

    def spec_string(self) -> str:
        if self.m == 1:
            return f"{self.p}^1"
        if self.p == 2:
            return f"2^{self.m}/0x{self._mask:X}"
        return f"{self.p}^{self.m}/" + ",".join(str(c) for c in self.modulus)

    # -- tables ------------------------------------------------------------

    def _build_tables(self) -> None:
        q = self.q
        if q == 2:
            g = 1
        else:
            factors = prime_factors(q - 1)
            g = next(
                c for c in range(2, q)
                if all(self._pow_slow(c, (q - 1) // r) != 1 for r in factors)
            )
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        self.generator = g
        self._exp = exp
        self._log = log

    def _mul_slow(self, x: int, y: int) -> int:
        if self.p == 2:
            m, mask = self.m, self._mask
            acc = 0
            while y:
                if y & 1:
                    acc ^= x
                y >>= 1
                x <<= 1
                if x >> m & 1:
                    x ^= mask
            return acc
        if self.m == 1:
            return x * y % self.p
        a = code_to_coeffs(x, self.p, self.m)
        b = code_to_coeffs(y, self.p, self.m)
        r = _poly_mulmod(_trim(a), _trim(b), self.modulus, self.p)
        return coeffs_to_code(r, self.p)

    def _pow_slow(self, x: int, e: int) -> int:
        acc = 1
        while e:
            if e & 1:
                acc = self._mul_slow(acc, x)
            x = self._mul_slow(x, x)
            e >>= 1
        return acc

    # -- elements ------------------------------------------------------------

    def __call__(self, code: int) -> "FieldElement":
        return FieldElement(self, self.check(code))

    def check(self, code: int) -> int:
        code = int(code)
        if not 0 <= code < self.q:
            raise UsageError(f"code {code} outside [0, {self.q}) for {self.spec_string()}")
        return code

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> Iterator["FieldElement"]:
        for c in range(self.q):
            yield FieldElement(self, c)

    def coeffs(self, code: int) -> list[int]:
        return code_to_coeffs(code, self.p, self.m)

    def format(self, code: int) -> str:
        return f"0x{code:X}" if self.p == 2 else str(code)

    def parse_element(self, text: str) -> int:
        t = text.strip()
        try:
            code = int(t, 0)
        except ValueError:
            raise UsageError(f"cannot parse field element {text!r}") from None
        if not 0 <= code < self.q:
            raise UsageError(f"element {text!r} outside field {self.spec_string()}")
        return code

    # -- arithmetic on codes ---------------------------------------------

    def add(self, x: int, y: int) -> int:
        p = self.p
        if p == 2:
            return x ^ y
        if self.m == 1:
            return (x + y) % p
        out, scale = 0, 1
        while x or y:
            x, dx = divmod(x, p)
            y, dy = divmod(y, p)
            out += (dx + dy) % p * scale
            scale *= p
        return out

    def neg(self, x: int) -> int:
        p = self.p
        if p == 2:
            return x
        if self.m == 1:
            return -x % p
        out, scale = 0, 1
        while x:
            x, d = divmod(x, p)
            out += -d % p * scale
            scale *= p
        return out

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if not x or not y:
            return 0
        log = self._log
        if log is not None:
            return self._exp[log[x] + log[y]]
        return self._mul_slow(x, y)

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(x), -e)
        if x == 0:
            return 1 if e == 0 else 0
        if self._log is not None:
            return self._exp[self._log[x] * e % (self.q - 1)]
        return self._pow_slow(x, e)

    def inv(self, x: int) -> int:
        if x == 0:
            raise DomainError("zero has no multiplicative inverse")
        if self._log is not None:
            return self._exp[(self.q - 1 - self._log[x]) % (self.q - 1)]
        return self._pow_slow(x, self.q - 2)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def is_qr(self, x: int) -> bool:
        if x == 0:
            raise DomainError("quadratic residuosity is defined on nonzero elements only")
        if self.p == 2:
            return True
        return self.pow(x, (self.q - 1) // 2) == 1

    def _first_nonresidue(self) -> int:
        if self._nonresidue is None:
            self._nonresidue = next(c for c in range(2, self.q) if not self.is_qr(c))
        return self._nonresidue

    def sqrt(self, x: int) -> Optional[int]:
        """A square root of ``x``, or None for a non-residue.

        Odd characteristic returns the root with the smaller code.
        """
        if x == 0:
            return 0
        if self.p == 2:
            return self.pow(x, self.q // 2)
        if not self.is_qr(x):
            return None
        # Tonelli-Shanks with q - 1 = 2^s * t, t odd.
        t, s = self.q - 1, 0
        while t % 2 == 0:
            t //= 2
            s += 1
        c = self.pow(self._first_nonresidue(), t)
        u = self.pow(x, t)
        r = self.pow(x, (t + 1) // 2)
        while u != 1:
            i, w = 0, u
            while w != 1:
                w = self.mul(w, w)
                i += 1
            b = c
            for _ in range(s - i - 1):
                b = self.mul(b, b)
            s = i
            c = self.mul(b, b)
            u = self.mul(u, c)
            r = self.mul(r, b)
        return min(r, self.neg(r))


@dataclass(frozen=True)
class FieldElement:
    field: Field
    code: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise UsageError("operands belong to different fields")
            return other.code
        if isinstance(other, int):
            return self.field.check(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.sub(self.code, o))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.div(self.code, o))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __str__(self):
        return self.field.format(self.code)

    def __repr__(self):
        return f"FieldElement({self.field.spec_string()}, {self})"

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def sqrt(self) -> Optional["FieldElement"]:
        r = self.field.sqrt(self.code)
        return None if r is None else FieldElement(self.field, r)

    def is_qr(self) -> bool:
        return self.field.is_qr(self.code)


def _same(a: FieldElement, b: FieldElement) -> Field:
    if a.field != b.field:
        raise UsageError("operands belong to different fields")
    return a.field


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _same(a, b)
    return FieldElement(f, f.add(a.code, b.code))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _same(a, b)
    return FieldElement(f, f.mul(a.code, b.code))


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def sqrt(a: FieldElement) -> Optional[FieldElement]:
    return a.sqrt()


def is_qr(a: FieldElement) -> bool:
    return a.is_qr()


# --- field spec strings ---------------------------------------------------------

_SPEC_RE = re.compile(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*(?:/(.*))?$")


@functools.lru_cache(maxsize=64)
def get_field(p: int, m: int = 1, modulus: Optional[tuple[int, ...]] = None) -> Field:
    """Cached constructor so that tables are built once per field."""
    return Field(p, m, modulus)


def parse_field(text: str) -> Field:
    """Parse ``p^m/modulus``.

    The modulus is a hex bitmask (``2^4/0x13``) for p = 2 and a comma list of
    coefficients, constant term first, otherwise.  It may be omitted for
    prime fields and for fields with a shipped default.
    """
    mt = _SPEC_RE.match(text)
    if not mt:
        raise UsageError(f"field spec {text!r}: expected p^m/modulus at position 0")
    p, m = int(mt.group(1)), int(mt.group(2) or 1)
    mod_text = mt.group(3)
    if mod_text is None or not mod_text.strip():
        if mod_text is not None:
            raise UsageError(f"field spec {text!r}: empty modulus at position {mt.start(3)}")
        try:
            return get_field(p, m)
        except UsageError as exc:
            raise UsageError(f"field spec {text!r}: {exc} at position 0") from None
    mod_text = mod_text.strip()
    pos = mt.start(3)
    if p == 2 and "," not in mod_text:
        try:
            mask = int(mod_text, 0)
        except ValueError:
            raise UsageError(f"field spec {text!r}: bad modulus bitmask at position {pos}") from None
        if mask.bit_length() != m + 1:
            raise UsageError(
                f"field spec {text!r}: modulus 0x{mask:X} at position {pos} is not of degree {m}"
            )
        coeffs = tuple(code_to_coeffs(mask, 2, m + 1))
    else:
        parts = mod_text.split(",")
        try:
            coeffs = tuple(int(c) for c in parts)
        except ValueError:
            raise UsageError(f"field spec {text!r}: bad coefficient list at position {pos}") from None
    try:
        return get_field(p, m, coeffs)
    except UsageError as exc:
        raise UsageError(f"field spec {text!r}: {exc} (modulus at position {pos})") from None
