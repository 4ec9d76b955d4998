"""Reference values for the unit tests, computed independently of the C++ code.

ODE values come from scipy's DOP853 at tight tolerances; curvature values from
symbolic differentiation. Run with: python3 tests/oracles/generate.py
"""
import numpy as np
import sympy as sp
from scipy.integrate import solve_ivp

TOL = dict(method='DOP853', rtol=1e-13, atol=1e-15)


def arc_length_states(alpha, z0, s_values):
    # x' = cos psi, z' = sin psi, psi' = alpha (z cos psi - x sin psi)/(x^2+z^2) - sin psi/x
    def f(s, y):
        x, z, psi = y
        return [np.cos(psi), np.sin(psi),
                alpha * (z * np.cos(psi) - x * np.sin(psi)) / (x**2 + z**2) - np.sin(psi) / x]
    sol = solve_ivp(f, (0, max(s_values)), [z0, 0.0, np.pi / 2], t_eval=s_values, **TOL)
    return [(s, *sol.y[:, i]) for i, s in enumerate(s_values)]


def graph_height(alpha, u0, r_end, r_start=1e-4):
    # u'' = (1+u'^2)^{3/2} (g - u'/(r sqrt(1+u'^2))), g = alpha (u - r u')/((r^2+u^2) sqrt(1+u'^2))
    def f(r, y):
        u, du = y
        w = np.sqrt(1 + du**2)
        g = alpha * (u - r * du) / ((r**2 + u**2) * w)
        return [du, w**3 * (g - du / (r * w))]
    c = alpha / (2 * u0)
    sol = solve_ivp(f, (r_start, r_end), [u0 + c * r_start**2 / 2, c * r_start], **TOL)
    return sol.y[:, -1]


def helicoidal_curvature(q1, h, x0, s0, t0):
    s, t = sp.symbols('s t', real=True)
    psi = sp.Rational(2, 5) + s / 2
    x = x0 + 2 * (sp.sin(psi) - sp.sin(sp.Rational(2, 5)))
    z = 2 * (sp.cos(sp.Rational(2, 5)) - sp.cos(psi))
    phi = sp.Matrix([q1 + x * sp.cos(t), x * sp.sin(t), z + h * t])
    ps, pt = phi.diff(s), phi.diff(t)
    n = ps.cross(pt)
    n = n / sp.sqrt(n.dot(n))
    E, F, G = ps.dot(ps), ps.dot(pt), pt.dot(pt)
    L, M, N = phi.diff(s, 2).dot(n), phi.diff(s, t).dot(n), phi.diff(t, 2).dot(n)
    sub = {s: s0, t: t0}
    vals = {k: sp.N(v.subs(sub), 30) for k, v in dict(E=E, F=F, G=G, L=L, M=M, N=N).items()}
    H = (vals['E'] * vals['N'] - 2 * vals['F'] * vals['M'] + vals['G'] * vals['L']) / (
        vals['E'] * vals['G'] - vals['F']**2)
    return [sp.N(H, 20), sp.N(n.dot(phi).subs(sub), 20), sp.N(phi.dot(phi).subs(sub), 20)]


if __name__ == '__main__':
    for alpha, s_values in ((1, [0.5, 1.0, 2.0]), (-3, [0.25, 0.5, 0.75])):
        for row in arc_length_states(alpha, 1.0, s_values):
            print('plane', alpha, *['%.17g' % v for v in row])
    for alpha, u0, r in ((1, 1.0, 0.5), (-1, 1.0, 0.5), (-3, 2.0, 0.8)):
        u, du = graph_height(alpha, u0, r)
        print('graph', alpha, u0, r, '%.17g' % u, '%.17g' % du)
    for q1, h in ((sp.Rational(1, 2), 1), (0, 2), (1, 0)):
        print('helicoidal', q1, h, *helicoidal_curvature(q1, h, 1, sp.Rational(3, 10), sp.Rational(7, 10)))
