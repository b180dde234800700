"""Dense univariate polynomials over an arbitrary field object.

A polynomial is a plain list of coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is ``[]``.  Every function takes the
coefficient field ``K`` explicitly.  ``K`` only needs ``zero``, ``one``,
``add``, ``sub``, ``mul``, ``neg``, ``inv`` and ``is_zero``.
"""

from __future__ import annotations


def trim(K, a):
    a = list(a)
    while a and K.is_zero(a[-1]):
        a.pop()
    return a


def deg(a) -> int:
    return len(a) - 1


def lc(a):
    return a[-1]


def const(K, c):
    return [] if K.is_zero(c) else [c]


def add(K, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = K.add(out[i], c)
    return trim(K, out)


def neg(K, a):
    return [K.neg(c) for c in a]


def sub(K, a, b):
    return add(K, a, neg(K, b))


def scale(K, a, c):
    if K.is_zero(c):
        return []
    return trim(K, [K.mul(x, c) for x in a])


def mul(K, a, b):
    if not a or not b:
        return []
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if K.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = K.add(out[i + j], K.mul(x, y))
    return trim(K, out)


def shift(K, a, k):
    """Multiply by the k-th power of the variable."""
    return [K.zero] * k + list(a) if a else []


def divmod_(K, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv_lc = K.inv(b[-1])
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], trim(K, a)
    q = [K.zero] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if K.is_zero(c):
            continue
        c = K.mul(c, inv_lc)
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] = K.sub(a[i - db + j], K.mul(c, b[j]))
    return trim(K, q), trim(K, a[:db])


def rem(K, a, b):
    return divmod_(K, a, b)[1]


def exquo(K, a, b):
    q, r = divmod_(K, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def monic(K, a):
    if not a:
        return []
    return scale(K, a, K.inv(a[-1]))


def gcd(K, a, b):
    """Monic greatest common divisor (``[]`` when both inputs vanish)."""
    a, b = trim(K, a), trim(K, b)
    while b:
        a, b = b, rem(K, a, b)
    return monic(K, a)


def xgcd(K, a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = trim(K, a), trim(K, b)
    s0, s1 = [K.one], []
    t0, t1 = [], [K.one]
    while r1:
        q, r = divmod_(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(K, s0, mul(K, q, s1))
        t0, t1 = t1, sub(K, t0, mul(K, q, t1))
    if not r0:
        return [], s0, t0
    c = K.inv(r0[-1])
    return scale(K, r0, c), scale(K, s0, c), scale(K, t0, c)


def deriv(K, a):
    out = []
    for i in range(1, len(a)):
        out.append(K.mul(K.from_int(i), a[i]))
    return trim(K, out)


def evaluate(K, a, x):
    acc = K.zero
    for c in reversed(a):
        acc = K.add(K.mul(acc, x), c)
    return acc


def compose(K, a, b):
    """Return a(b(x))."""
    acc = []
    for c in reversed(a):
        acc = add(K, mul(K, acc, b), const(K, c))
    return acc


def powmod(K, base, e, modulus):
    result = [K.one]
    base = rem(K, base, modulus)
    while e:
        if e & 1:
            result = rem(K, mul(K, result, base), modulus)
        e >>= 1
        if e:
            base = rem(K, mul(K, base, base), modulus)
    return result


def strip_common(K, h, d):
    """Remove from ``h`` every root it shares with ``d`` (all multiplicities)."""
    while True:
        c = gcd(K, h, d)
        if len(c) <= 1:
            return h
        h = exquo(K, h, c)


def simple_root_part(K, f):
    """Product of the simple-root factors of ``f`` (characteristic 0 or large).

    Every root of the result is a simple root of ``f`` and every simple
    root of ``f`` is a root of the result.
    """
    f = monic(K, f)
    if len(f) <= 1:
        return f
    return strip_common(K, f, gcd(K, f, deriv(K, f)))


def resultant(K, a, b):
    """Resultant of two univariate polynomials via the Euclidean recurrence."""
    if not a or not b:
        return K.zero
    da, db = deg(a), deg(b)
    if da == 0:
        return K.pow(a[0], db) if db else K.one
    if db == 0:
        return K.pow(b[0], da)
    r = rem(K, a, b)
    if not r:
        return K.zero
    # res(a, b) = (-1)^(da*db) * lc(b)^(da - dr) * res(b, r)
    dr = deg(r)
    sign = K.one if (da * db) % 2 == 0 else K.neg(K.one)
    return K.mul(sign, K.mul(K.pow(b[-1], da - dr), resultant(K, b, r)))
