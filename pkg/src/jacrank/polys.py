"""Dense univariate polynomials over Z/nZ.

Polynomials are lists of ints, constant term first, with no trailing zeros
(the zero polynomial is ``[]``).  Every routine takes the modulus ``n``
explicitly; division needs an invertible leading coefficient.
"""


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def norm(a, n):
    return trim(x % n for x in a)


def add(a, b, n):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return norm(out, n)


def sub(a, b, n):
    return add(a, [-c for c in b], n)


def scale(a, c, n):
    return norm((c * x for x in a), n)


def mul(a, b, n):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return norm(out, n)


def divmod_(a, b, n):
    b = norm(b, n)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, n)
    r = norm(a, n)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    qt = [0] * (len(r) - db)
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        c = r[-1] * inv % n
        qt[k] = c
        for i, y in enumerate(b):
            r[i + k] -= c * y
        r = norm(r, n)
    return trim(qt), r


def rem(a, b, n):
    return divmod_(a, b, n)[1]


def monic(a, n):
    a = norm(a, n)
    if not a:
        return a
    return scale(a, pow(a[-1], -1, n), n)


def gcd(a, b, p):
    """Monic gcd over the field F_p."""
    a, b = norm(a, p), norm(b, p)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def xgcd(a, b, p):
    """Return (g, s, t) with s*a + t*b = g monic, over F_p."""
    r0, r1 = norm(a, p), norm(b, p)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        qt, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(qt, s1, p), p)
        t0, t1 = t1, sub(t0, mul(qt, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def powmod(a, e, mod, n):
    result = [1 % n]
    base = rem(a, mod, n)
    while e:
        if e & 1:
            result = rem(mul(result, base, n), mod, n)
        e >>= 1
        if e:
            base = rem(mul(base, base, n), mod, n)
    return result


def derivative(a, n):
    return norm((i * c for i, c in enumerate(a)), n)[1:] if len(a) > 1 else []


def evaluate(a, x, n):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % n
    return acc
