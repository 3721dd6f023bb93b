"""Curvature expansions of forward spheres near the boundary, derived with
truncated Laurent arithmetic in s = sqrt(x2) = exp(-r/2).

Normalized frame: boundary x2 = f(x1), f = x1^2/4 + f3 x1^3/6 + f4 x1^4/24
+ f5 x1^5/120, base point (0, 1), study point (0, s^2), tangent (1, 0).
W is the support width of the domain in the x2 direction.
"""
import sympy as sp

f3, f4, f5, W = sp.symbols("f3 f4 f5 W")
FJ = [0, 0, sp.Rational(1, 4), f3 / 6, f4 / 24, f5 / 120]


class L:
    """Laurent series sum c[k] s^k, exact for k <= top."""

    def __init__(self, c, top):
        self.top = top
        self.c = {k: sp.expand(v) for k, v in c.items() if k <= top}
        self.c = {k: v for k, v in self.c.items() if v != 0}

    @staticmethod
    def const(v, top=10**6):
        return L({0: sp.sympify(v)}, top)

    @staticmethod
    def mono(k, v=1, top=10**6):
        return L({k: sp.sympify(v)}, top)

    def val(self):
        return min(self.c) if self.c else self.top

    def __add__(self, o):
        if not isinstance(o, L):
            o = L.const(o)
        top = min(self.top, o.top)
        d = dict(self.c)
        for k, v in o.c.items():
            d[k] = d.get(k, 0) + v
        return L(d, top)

    __radd__ = __add__

    def __neg__(self):
        return L({k: -v for k, v in self.c.items()}, self.top)

    def __sub__(self, o):
        return self + (-o if isinstance(o, L) else L.const(-o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, L):
            return L({k: v * o for k, v in self.c.items()}, self.top)
        top = min(self.top + o.val(), o.top + self.val())
        d = {}
        for i, a in self.c.items():
            for j, b in o.c.items():
                if i + j <= top:
                    d[i + j] = d.get(i + j, 0) + a * b
        return L(d, top)

    __rmul__ = __mul__

    def inv(self):
        v = self.val()
        a0 = self.c[v]
        top = self.top - 2 * v
        # r = self / (a0 s^v) - 1, exact through self.top - v
        r = L({k - v: c / a0 for k, c in self.c.items() if k != v}, self.top - v)
        out = L.const(1, top + v)
        p = L.const(1, top + v)
        n = 1
        while True:
            p = p * r * (-1)
            if p.val() > top + v or not p.c:
                break
            out = out + p
            n += 1
        return L({k - v: c / a0 for k, c in out.c.items()}, top)

    def sqrt(self):
        v = self.val()
        assert v % 2 == 0
        a0 = self.c[v]
        r = L({k - v: c / a0 for k, c in self.c.items() if k != v}, self.top - v)
        top = self.top - v // 2
        out = L.const(1, self.top - v)
        p = L.const(1, self.top - v)
        for n in range(1, 20):
            p = p * r
            if not p.c and p.val() > self.top:
                break
            out = out + p * sp.binomial(sp.Rational(1, 2), n)
        return L({k + v // 2: sp.sqrt(a0) * c for k, c in out.c.items()}, top)

    def __truediv__(self, o):
        if isinstance(o, L):
            return self * o.inv()
        return self * (sp.Integer(1) / o)

    def show(self, lo=None, hi=None):
        ks = sorted(self.c)
        return ", ".join(f"s^{k}: {sp.factor(self.c[k])}" for k in ks
                         if (lo is None or k >= lo) and (hi is None or k <= hi)) + f"  [top {self.top}]"


def poly(coeffs, z):
    out = L.const(0, z.top + 10)
    p = L.const(1, 10**6)
    for k, c in enumerate(coeffs):
        if k > 0:
            p = p * z
        if c != 0:
            out = out + p * c
    return out


def deriv(coeffs):
    return [k * coeffs[k] for k in range(1, len(coeffs))]


TOP = 7
s2 = L.mono(2)

# T: f(T) = s^2, T = 2s + ...
T = L({1: 2}, 1)
fp = deriv(FJ)
for _ in range(TOP + 2):
    T = T - (poly(FJ, T) - s2) / poly(fp, T)
    T = L(T.c, min(T.top + 1, TOP))
print("T:", T.show())

th = T.inv()
fpT = poly(fp, T)
fppT = poly(deriv(fp), T)
tx2 = fpT.inv()
tx2x2 = -fppT * tx2 * tx2 * tx2
thx1 = th * th
thx2 = -tx2 * th * th
thx1x1 = th * th * th * (-1) * (-1) * 2
thx1x2 = th * th * th * tx2 * (-2)
thx2x2 = th * th * th * tx2 * tx2 * 2 - th * th * tx2x2


def gij(a, b, ab):
    return (ab * th - a * b * 2) / (th * th) + a * b / (th * th)


g11, g12, g22 = gij(thx1, thx1, thx1x1), gij(thx1, thx2, thx1x2), gij(thx2, thx2, thx2x2)
print("Theta:", th.show())
print("g11:", g11.show())
print("g12:", g12.show())
print("g22:", g22.show())

one_m = 1 - s2
thT = one_m * th
c1 = [one_m, L.const(0)]
c2 = [L.const(0), one_m * sp.Rational(1, 2)]
nab = [c2[0] + thT * c1[0], c2[1] + thT * c1[1]]


def gform(u, v):
    return g11 * u[0] * v[0] + g12 * (u[0] * v[1] + u[1] * v[0]) + g22 * u[1] * v[1]


gdot = gform(nab, c1)
k = thT - gdot / (thT * thT)
den = (thT * thT).inv()
acc = [(c2[0] + c1[0] * k) * den, (c2[1] + c1[1] * k) * den]
print("acc1:", acc[0].show())
print("acc2:", acc[1].show())
kF2 = gform(acc, acc)
print("kF2:", kF2.show())
kF = kF2.sqrt()
print("kF:", kF.show())
kn_out = -one_m / (s2 * thT * thT * 2)
kn_in = one_m / ((W - s2) * thT * thT * 2)
print("kn_outer:", kn_out.show())
print("kn_inner:", L(kn_in.c, 5).show())

# Rund: boundary hit of (0, s^2) + tau * acc, acc = (s a, s^2 b)
a = L({k - 1: v for k, v in acc[0].c.items()}, acc[0].top - 1)
b = L({k - 2: v for k, v in acc[1].c.items()}, acc[1].top - 2)
print("a:", a.show(), " b:", b.show())
tau = L.const(1 + sp.sqrt(2), 0)
# F(tau) = sum FJ[k] s^(k-2) a^k tau^k - 1 - b tau
for it in range(5):
    z = a * tau
    F = L.const(-1, 10**6) - b * tau
    dF = -b
    zp = L.const(1, 10**6)
    for kk in range(1, len(FJ)):
        zk = zp * z
        if FJ[kk] != 0:
            F = F + zk * L.mono(kk - 2, FJ[kk])
            dF = dF + zp * a * L.mono(kk - 2, kk * FJ[kk])
        zp = zk
    tau = L((tau - F / dF).c, min(it + 1, 3))
    tau = L({kk: sp.radsimp(sp.nsimplify(v)) for kk, v in tau.c.items()}, tau.top)
print("tau:", tau.show())
kR = tau.inv()
print("kR:", L({kk: sp.radsimp(v) for kk, v in kR.c.items()}, kR.top).show())

print("\n# numeric tables, f4 = -1/5, f5 = 3/7, W = 13/10")
for v in [sp.Integer(0), sp.Rational(1, 2), sp.Integer(1), sp.Rational(-3, 4)]:
    sub = {f3: v, f4: sp.Rational(-1, 5), f5: sp.Rational(3, 7), W: sp.Rational(13, 10)}
    print("f3 =", v)
    for name, e in [("kF2", kF2), ("kF", kF), ("kn_outer", kn_out), ("kn_inner", kn_in), ("kR", kR), ("tau", tau)]:
        print("  ", name, {kk: (sp.N(vv.subs(sub), 17) if name in ("kR", "tau") else sp.nsimplify(vv.subs(sub)))
                          for kk, vv in sorted(e.c.items()) if kk <= e.val() + 3})
