"""Walk both sides of the mirror identity for a mixed polynomial.

For W = x1^5 + x2^3*x3 + x3^4 + x4^3*x5 + x5^3*x4 the toolkit computes,
for every variable the reconstruction theorem covers, the A-side
four-point invariant <psi(x_i), psi(x_i), psi(M_i/x_i^2), psi(top)> and
the B-side Saito-Givental correlator of the transpose, and shows they
land on q_i and -q_i exactly.

Run:  python3 demos/mirror_identity.py
"""

from fractions import Fraction

from lgmirror import fjrw_four_point, four_point_report, sg_four_point
from lgmirror.amodel import admissible_target
from lgmirror.bmodel import LatticeElement, brieskorn_reduce
from lgmirror.errors import UnsupportedByTheorem
from lgmirror.poly import InvertiblePolynomial
from lgmirror.wdvv import format_monomial

W = InvertiblePolynomial.from_string("x1^5 + x2^3*x3 + x3^4 + x4^3*x5 + x5^3*x4")

print(f"W  = {W.to_string()}")
print(f"   = {W.describe()}")
print(f"q  = ({', '.join(str(q) for q in W.q)})   central charge {W.charge}")
print(f"Wt = {W.transpose().to_string()}")
print()

for i in range(1, W.N + 1):
    try:
        piece, local = admissible_target(W, i)
    except UnsupportedByTheorem as exc:
        print(f"x{i}: not covered by the theorem ({exc})")
        continue

    a_side = four_point_report(W, i)
    b_side = sg_four_point(W, i)
    print(f"x{i}: A = {a_side.value} via {a_side.method},  B = {b_side}")
    assert a_side.value == W.q[i - 1] == -b_side

    # The B side is one exact division chain in the Brieskorn lattice of
    # the summand: [M_i d^nx] reduces to -q_i * z [d^nx].
    target = tuple(piece.E[j][local - 1] for j in range(piece.N))
    steps: list[dict] = []
    reduced = brieskorn_reduce(piece, LatticeElement.from_poly(target), steps)
    print(f"    [{format_monomial(target)} d^nx] reduces in {len(steps)} passes:")
    for s in steps:
        terms = " + ".join(f"{c}*{format_monomial(m)}" for m, c in s["pushed"].items())
        print(f"      z^{s['z']}: pushes {terms or 'nothing'}")
    print(f"    normal form: {reduced!r}")

    # The A side integrates second Bernoulli values over three boundary
    # decorations (when the concave formula applies).
    if a_side.decorations:
        print("    boundary decorations of the four-pointed moduli:")
        for dec in a_side.decorations:
            plus, minus = dec.splitting
            marks = ",".join(str(m + 1) for m in plus) + " | " + ",".join(
                str(m + 1) for m in minus
            )
            phases = ", ".join(str(p) for p in dec.gamma_plus.phases)
            print(f"      {marks}:  node sector ({phases})")
    print()

print("Every admissible variable satisfies A = q_i and B = -q_i -- the")
print("genus-zero mirror identity, certified in exact rational arithmetic.")
assert fjrw_four_point(W, 1) == Fraction(1, 5)
