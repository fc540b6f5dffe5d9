"""Symbolic oracle for the sasakian-3 builtin.

Computes Christoffel symbols and covariant derivatives symbolically, then
prints the frozen values used by the C++ unit tests.
"""
import sympy as sp

x, y, z = sp.symbols("x y z")
crd = [x, y, z]
n = 3
A = sp.Matrix([-y / 2, 0, sp.Rational(1, 2)])          # covector
T = sp.Matrix([0, 0, 2])
g = A * A.T + sp.diag(sp.Rational(1, 4), sp.Rational(1, 4), 0)
F = sp.zeros(3, 3)                                      # F[i, j] = F^i_j
F[1, 0] = -1                                            # F dx = -dy
F[0, 1] = 1; F[2, 1] = y                                # F dy = dx + y dz
gi = g.inv()

Gam = [[[sp.simplify(sum(gi[k, l] * (sp.diff(g[j, l], crd[i]) + sp.diff(g[i, l], crd[j])
                                      - sp.diff(g[i, j], crd[l])) for l in range(n)) / 2)
         for j in range(n)] for i in range(n)] for k in range(n)]

# (D_k F)^i_j = d_k F^i_j + G^i_{kl} F^l_j - G^l_{kj} F^i_l
DF = [[[sp.simplify(sp.diff(F[i, j], crd[k]) + sum(Gam[i][k][l] * F[l, j] - Gam[l][k][j] * F[i, l]
                                                   for l in range(n)))
        for j in range(n)] for i in range(n)] for k in range(n)]


def DFXY(X, Y):
    return sp.Matrix([sum(DF[k][i][j] * X[k] * Y[j] for k in range(n) for j in range(n)) for i in range(n)])


X = sp.Matrix(sp.symbols("X0:3"))
Y = sp.Matrix(sp.symbols("Y0:3"))
target = (X.T * g * Y)[0] * T - (A.T * Y)[0] * X
print("(D_X F)Y - [g(X,Y)T - A(Y)X] =", sp.simplify(DFXY(X, Y) - target).T)
print("(D_X F)Y + [g(X,Y)T - A(Y)X] =", sp.simplify(DFXY(X, Y) + target).T)

# (D_k 'F)_{ij} = g((D_k F) e_i, e_j)
def DpF(Xv, Yv, Zv):
    return (DFXY(Xv, Yv).T * g * Zv)[0]

e = [sp.Matrix([1 if i == j else 0 for i in range(n)]) for j in range(n)]
Fm = lambda v: F * v
ex, ey, ez = e
N = DpF(Fm(ex), ey, ez) - DpF(Fm(ey), ex, ez) + DpF(ex, ey, Fm(ez)) - DpF(ey, ex, Fm(ez))
print("N(dx,dy,dz) at origin =", sp.nsimplify(N.subs({x: 0, y: 0, z: 0})))
N2 = DpF(Fm(ex), ey, ex) - DpF(Fm(ey), ex, ex) + DpF(ex, ey, Fm(ex)) - DpF(ey, ex, Fm(ex))
print("N(dx,dy,dx) at (0.3,-0.7,1.1) =", sp.nsimplify(sp.simplify(N2.subs({x: 0.3, y: sp.Rational(-7, 10), z: 1.1}))))
print("Gamma at y=2:")
for k in range(n):
    print(k, [[Gam[k][i][j].subs(y, 2) for j in range(n)] for i in range(n)])
