import sys
sys.path.insert(0, "src")
from fractions import Fraction as F

from divfan.base import BaseVariety
from divfan.downgrade import DowngradeData, downgrade_cone, downgrade_fan, quotient_fan, maximal_cells
from divfan.geom import Cone, interval, polyhedron, ray_poly
from divfan.geom.polyhedron import TailedPolyhedron
from divfan.geom import linalg as la
from divfan.ppdiv import PPDivisor

ok = 0
def chk(cond, msg):
    global ok
    assert cond, msg
    ok += 1
    print("ok", msg)

# ---- criterion-3 shaped example: quadrant, deg(a,b)=a+b ----
data = DowngradeData.from_deg([[1, 1]])
chk(data.kernel == ((F(1), F(-1)),), f"kernel sign-normalized, got {data.kernel}")
chk(data.section == ((F(1),), (F(0),)), f"default section s(1)=(1,0), got {data.section}")
chk(la.matmul(data.deg, data.section) == la.identity(1), "deg . section = id")
t = data.retraction()
kercols = la.transpose(data.kernel)
sd = la.matmul(data.section, data.deg)
lhs = la.matmul(kercols, t)
rhs = tuple(tuple(F(1 if i == j else 0) - sd[i][j] for j in range(2)) for i in range(2))
chk(lhs == rhs, "kernel . t = id - section . deg")

quad = Cone.from_rays([[1, 0], [0, 1]])
cells = quotient_fan(data, [quad])
mx = maximal_cells(cells)
chk(sorted(c.rays for c in mx) == [((F(-1),),), ((F(1),),)], f"quotient fan is the P1 fan, got {mx}")

d = downgrade_cone(quad, data)
chk(d.base.kind == "toric" and d.base.complete, "base is the toric projective line")
chk(d.base.prime_names == ("D[-1]", "D[1]"), f"primes, got {d.base.prime_names}")
chk(d.tail == Cone.from_rays([[1]]), f"tail, got {d.tail}")
chk(d.coeff("D[1]") == ray_poly([1], [1]), f"coeff at D[1], got {d.coeff('D[1]')}")
chk(d.coeff("D[-1]") == ray_poly([0], [1]), f"coeff at D[-1] is the trivial cone, got {d.coeff('D[-1]')}")
chk(d.support == ("D[1]",), "only D[1] is stored")

# ---- F1 as P(O + O(D)) over P1: downgrade of the toric fan ----
f1_cones = [
    Cone.from_rays([[1, 0], [0, 1]]),
    Cone.from_rays([[0, 1], [-1, 1]]),
    Cone.from_rays([[-1, 1], [0, -1]]),
    Cone.from_rays([[0, -1], [1, 0]]),
]
data2 = DowngradeData.from_deg([[1, 0]])
chk(data2.kernel == ((F(0), F(1)),), f"kernel, got {data2.kernel}")
chk(data2.section == ((F(1),), (F(0),)), f"section, got {data2.section}")
divs = downgrade_fan(f1_cones, data2)
base = divs[0].base
chk(base.prime_names == ("D[-1]", "D[1]"), f"F1 base primes, got {base.prime_names}")
zero1 = Cone.zero(1)
pos1 = Cone.from_rays([[1]])
neg1 = Cone.from_rays([[-1]])
# expected charts, P1 <-> D[1], P2 <-> D[-1]
expected = [
    (pos1, {"D[1]": ray_poly([0], [1]), "D[-1]": TailedPolyhedron.empty(pos1)}),
    (pos1, {"D[1]": TailedPolyhedron.empty(pos1), "D[-1]": ray_poly([0], [1])}),
    (zero1, {"D[1]": interval(-1, 0), "D[-1]": TailedPolyhedron.empty(zero1)}),
    (neg1, {"D[1]": ray_poly([-1], [-1]), "D[-1]": ray_poly([0], [-1])}),
]
got = {(dv.tail.key(), tuple(sorted((n, dv.coeff(n).key()) for n in base.prime_names)))
       for dv in divs}
want = {(tl.key(), tuple(sorted((n, c.key()) for n, c in cs.items())))
        for tl, cs in expected}
chk(got == want, "F1 downgrade matches the projectivization charts")

# ---- the two torus charts of the section-7 surface ----
exps1 = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, -1, 0, 1), (1, 2, 0, -1)]
exps2 = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, -1, 0), (0, 2, 0, 1), (1, -1, 0, -1)]
delta1 = Cone.from_halfspaces(4, exps1)
delta2 = Cone.from_halfspaces(4, exps2)
data4 = DowngradeData.from_deg([[0, 0, 1, 0], [0, 0, 0, 1]])
chk(data4.section == ((F(0), F(0)), (F(0), F(0)), (F(1), F(0)), (F(0), F(1))),
    f"section picks the (s,t) block, got {data4.section}")
chk(data4.kernel == ((F(1), F(0), F(0), F(0)), (F(0), F(1), F(0), F(0))),
    f"projection is (v1, v2), got {data4.kernel}")

g1 = downgrade_cone(delta1, data4)
chk(g1.base.kind == "toric" and not g1.base.complete, "chart base is affine toric")
chk(g1.base.prime_names == ("D[0,1]", "D[1,0]"), f"chart primes, got {g1.base.prime_names}")
chk(g1.coeff("D[1,0]") == polyhedron([[0, 0], [0, 1]], [[1, 0]]),
    f"chart 1 at div(x), got {g1.coeff('D[1,0]')}")
chk(g1.coeff("D[0,1]") == polyhedron([[0, 1], [0, 2]], [[1, 0]]),
    f"chart 1 at div(y), got {g1.coeff('D[0,1]')}")
chk(g1.tail == Cone.from_rays([[1, 0]]), f"chart 1 tail, got {g1.tail}")

g2 = downgrade_cone(delta2, data4)
chk(g2.coeff("D[1,0]") == polyhedron([[0, 0], [0, 1]], [[-1, 0]]),
    f"chart 2 at div(x), got {g2.coeff('D[1,0]')}")
chk(g2.coeff("D[0,1]") == polyhedron([[0, -1], [0, -2]], [[-1, 0]]),
    f"chart 2 at div(y), got {g2.coeff('D[0,1]')}")
chk(g2.tail == Cone.from_rays([[-1, 0]]), f"chart 2 tail, got {g2.tail}")

# validation error paths
try:
    DowngradeData.from_deg([[2, 0]])
    chk(False, "unreachable")
except ValueError as e:
    chk("surjective" in str(e), f"non-surjective deg refused: {e}")
try:
    DowngradeData.from_deg([[1, 1]], section=[[1], [1]])
    chk(False, "unreachable")
except ValueError as e:
    chk("identity" in str(e), f"bad section refused: {e}")
try:
    DowngradeData.from_deg([[1, 1], [2, 2]])
    chk(False, "unreachable")
except ValueError as e:
    chk("rank" in str(e), f"rank-deficient deg refused: {e}")

print(f"\nall {ok} checks passed")
