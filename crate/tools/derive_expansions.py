"""Independent symbolic derivation of the near-boundary expansions.

Works in the normalized frame: boundary x2 = f(x1) with f(0)=f'(0)=0,
f''(0)=1/2, base point at (0, 1), study point (0, s^2) on the forward sphere.
Everything is expanded in s = sqrt(x2) = exp(-r/2).  The output is used to
freeze expected coefficients in the Rust test-suite.
"""
import sympy as sp

s = sp.symbols("s", positive=True)
f3, f4, f5, f6, W = sp.symbols("f3 f4 f5 f6 W")
ORDER = 7  # keep terms through s^(ORDER-1) relative


def f(z):
    return z**2 / 4 + f3 * z**3 / 6 + f4 * z**4 / 24 + f5 * z**5 / 120 + f6 * z**6 / 720


def fp(z):
    return sp.diff(f(sp.Symbol("z")), sp.Symbol("z")).subs(sp.Symbol("z"), z)


def fpp(z):
    zz = sp.Symbol("z")
    return sp.diff(f(zz), zz, 2).subs(zz, z)


def ser(e, n=ORDER):
    return sp.expand(sp.series(e, s, 0, n).removeO())


# ray from (0, s^2) along (1, 0): f(T) = s^2, T = s*U, U = 2 + ...
cs = sp.symbols("u0:%d" % ORDER)
U = 2 + sum(cs[k] * s**k for k in range(1, ORDER))
eq = ser(sp.expand(f(s * U) / s**2 - 1), ORDER)
sol = {}
for k in range(1, ORDER):
    c = sp.expand(eq.coeff(s, k).subs(sol))
    sol[cs[k]] = sp.solve(c, cs[k])[0]
U = sp.expand(U.subs(sol))
T = s * U
print("T =", sp.collect(ser(T, ORDER + 1), s))

theta = ser(1 / T, ORDER - 1)
print("Theta(0,x2,1,0) =", sp.collect(theta, s))

# implicit derivatives at direction (1,0)
fpT = ser(fp(T), ORDER + 2)
fppT = ser(fpp(T), ORDER + 2)
tx1 = -1
tx2 = ser(1 / fpT, ORDER - 2)
tx2x2 = ser(-fppT / fpT**3, ORDER - 4)
th = 1 / T
thx1 = ser(-tx1 * th**2, ORDER - 3)
thx2 = ser(-tx2 * th**2, ORDER - 4)
thx1x1 = ser(2 * th**3 * tx1 * tx1, ORDER - 5)
thx1x2 = ser(2 * th**3 * tx1 * tx2, ORDER - 5)
thx2x2 = ser(2 * th**3 * tx2 * tx2 - th**2 * tx2x2, ORDER - 6)
print("tx2 =", sp.collect(tx2, s))
print("tx2x2 =", sp.collect(tx2x2, s))
print("Theta_x1 =", sp.collect(thx1, s))
print("Theta_x2 =", sp.collect(thx2, s))
print("Theta_x2x2 =", sp.collect(thx2x2, s))


def gij(a, b, ab):
    return th * (ab * th - 2 * a * b) / th**3 + a * b / th**2


g11 = ser(gij(thx1, thx1, thx1x1), ORDER - 4)
g12 = ser(gij(thx1, thx2, thx1x2), ORDER - 5)
g22 = ser(gij(thx2, thx2, thx2x2), ORDER - 6)
print("g11 =", sp.collect(g11, s))
print("g12 =", sp.collect(g12, s))
print("g22 =", sp.collect(g22, s))

x2 = s**2
thetaT = (1 - x2) * th
c1 = sp.Matrix([1 - x2, 0])
c2 = sp.Matrix([0, (1 - x2) / 2])
G = sp.Matrix([[gij(thx1, thx1, thx1x1), gij(thx1, thx2, thx1x2)],
               [gij(thx1, thx2, thx1x2), gij(thx2, thx2, thx2x2)]])
nab = c2 + thetaT * c1
gdot = (nab.T * G * c1)[0]
acc = (c2 + c1 * (thetaT - gdot / thetaT**2)) / thetaT**2
acc = sp.Matrix([ser(acc[0], ORDER), ser(acc[1], ORDER + 1)])
print("acc =", [sp.collect(a, s) for a in acc])
kF2 = ser((acc.T * G * acc)[0], ORDER - 2)
print("kF^2 =", sp.collect(kF2, s))
kF = ser(sp.sqrt(kF2), ORDER - 2)
print("kF =", sp.collect(kF, s))

kn_out = ser(-(1 - x2) / (2 * x2 * thetaT**2), ORDER - 2)
kn_in = ser((1 - x2) / (2 * (W - x2) * thetaT**2), ORDER)
print("kn_outer =", sp.collect(kn_out, s))
print("kn_inner =", sp.collect(kn_in, s))

# Rund: point (0, s^2) + tau * acc on the boundary
a = sp.expand(acc[0] / s)
b = sp.expand(acc[1] / s**2)
taus = sp.symbols("v0:%d" % (ORDER - 2))
tau0 = 1 + sp.sqrt(2)
tau = tau0 + sum(taus[k] * s**k for k in range(1, ORDER - 2))
eqR = ser(sp.expand(f(s * a * tau) / s**2 - 1 - b * tau), ORDER - 2)
solR = {}
for k in range(1, ORDER - 2):
    c = sp.expand(eqR.coeff(s, k).subs(solR))
    solR[taus[k]] = sp.simplify(sp.solve(c, taus[k])[0])
tau = tau.subs(solR)
print("tau =", [sp.nsimplify(sp.simplify(sp.expand(tau).coeff(s, k))) for k in range(0, 3)])
kR = ser(1 / tau, ORDER - 3)
print("kR =", [sp.radsimp(sp.simplify(kR.coeff(s, k))) for k in range(0, 3)])

print("\n# numeric tables for f3 in {0, 1/2, 1, -3/4}, f4 = -1/5, f5 = f6 = 0, W = 13/10")
for v in [sp.Integer(0), sp.Rational(1, 2), sp.Integer(1), sp.Rational(-3, 4)]:
    sub = {f3: v, f4: sp.Rational(-1, 5), f5: 0, f6: 0, W: sp.Rational(13, 10)}
    print("f3 =", v)
    for name, e, lo, hi in [("T", T, 1, 5), ("Theta", theta, -1, 3), ("g11", g11, -2, 1),
                            ("g12", g12, -3, 0), ("g22", g22, -4, -1), ("kn_inner", kn_in, 2, 5),
                            ("kn_outer", kn_out, 0, 3), ("kF2", kF2, 0, 3), ("kR", kR, 0, 2)]:
        ee = sp.expand(e.subs(sub))
        print("  ", name, [sp.nsimplify(ee.coeff(s, k)) if name != "kR" else sp.N(ee.coeff(s, k), 17) for k in range(lo, hi + 1)])
