import sys, time
sys.path.insert(0, "src")
from fractions import Fraction as F

from divfan.base import BaseVariety
from divfan.constructions import (
    cotangent_fan, danilov_gizatullin, fan_dp6, fan_hirzebruch, fan_p1, fan_p2,
    rank2_projectivization,
)
from divfan.fan import check_complete, check_coherence, check_separated, generate_fan, prime_slice
from divfan.geom import Cone, interval, polyhedron, ray_poly
from divfan.geom.polyhedron import TailedPolyhedron
from divfan.ppdiv import is_pp

ok = 0
def chk(cond, msg):
    global ok
    assert cond, msg
    ok += 1
    print("ok", msg)

# ---- D-G from the construction matches the hand-built trio ----
gens = danilov_gizatullin(2, 3)
zero1 = Cone.zero(1)
chk(gens[0].tail == zero1 and gens[0].coeff("p0") == interval(F(-1, 2), 0)
    and gens[0].coeff("p1") == interval(0, F(1, 3)) and gens[0].coeff("inf").is_empty,
    "inner divisor")
chk(gens[1].coeff("p1") == ray_poly([F(1, 3)], [1]), "upper divisor")
chk(gens[2].coeff("p0") == ray_poly([F(-1, 2)], [-1]), "lower divisor")
fanDG = generate_fan(gens)
chk(len(fanDG) == 7 and fanDG.validation.ok, "D-G fan builds and validates")
chk(all(is_pp(d) == "true" for d in gens), "generators proper")

# ---- rank-2: F1 reproduced ----
charts = [
    (Cone.from_rays([[1]]), (0,), (0,)),
    (Cone.from_rays([[-1]]), (0,), (-1,)),
]
divs = rank2_projectivization(charts)
base = divs[0].base
chk(base.kind == "P1" and base.prime_names == ("P1", "P2"), "rank-2 base")
pos1 = Cone.from_rays([[1]])
neg1 = Cone.from_rays([[-1]])
expected = {
    (pos1.key(), (("P1", ray_poly([0], [1]).key()), ("P2", TailedPolyhedron.empty(pos1).key()))),
    (pos1.key(), (("P1", TailedPolyhedron.empty(pos1).key()), ("P2", ray_poly([0], [1]).key()))),
    (zero1.key(), (("P1", interval(-1, 0).key()), ("P2", TailedPolyhedron.empty(zero1).key()))),
    (neg1.key(), (("P1", ray_poly([-1], [-1]).key()), ("P2", ray_poly([0], [-1]).key()))),
}
got = {(d.tail.key(), tuple(sorted((n, d.coeff(n).key()) for n in ("P1", "P2"))))
       for d in divs}
chk(got == expected, "rank-2 charts of F1")
f1fan = generate_fan(divs)
chk(f1fan.validation.ok, "F1 fan validates")
chk(check_complete(f1fan).status == "COMPLETE", "F1 complete")

# consistency violations are caught and name the ray
try:
    rank2_projectivization([
        (Cone.from_rays([[1, 0], [0, 1]]), (0, 0), (0, 1)),
        (Cone.from_rays([[0, 1], [-1, 0]]), (0, 0), (0, 2)),
    ])
    chk(False, "unreachable")
except ValueError as e:
    chk("jump" in str(e) and "(0, 1)" in str(e), f"jump mismatch names the ray: {e}")
try:
    rank2_projectivization([
        (Cone.from_rays([[1, 0], [0, 1]]), (0, 1), (0, 0)),
        (Cone.from_rays([[0, 1], [-1, 0]]), (0, 0), (0, 1)),
    ])
    chk(False, "unreachable")
except ValueError as e:
    chk("swapped" in str(e), f"label swap refused: {e}")

# a swap on a ray with equal jumps is fine
divs2 = rank2_projectivization([
    (Cone.from_rays([[1, 0], [0, 1]]), (1, 0), (0, 0)),
    (Cone.from_rays([[0, 1], [-1, 0]]), (0, 0), (1, 0)),
])
chk(len(divs2) == 4, "equal-jump relabelling accepted")

# ---- projectivized cotangent of P^2 ----
t0 = time.time()
cot = cotangent_fan(fan_p2())
chk(len(cot) == 6, f"6 generators, got {len(cot)}")
base = cot[0].base
chk(base.kind == "P1" and base.prime_names == ("P[0,1]", "P[1,0]", "P[1,1]"),
    f"base primes, got {base.prime_names}")
hexa = {Cone.from_rays(rs).key() for rs in (
    [[1, 0], [1, 1]], [[1, 1], [0, 1]], [[0, 1], [-1, 0]],
    [[-1, 0], [-1, -1]], [[-1, -1], [0, -1]], [[0, -1], [1, 0]])}
chk({d.tail.key() for d in cot} == hexa, "tails are the six hexagon cones")
chk(all(is_pp(d) == "true" for d in cot), "cotangent generators proper")
cfan = generate_fan(cot)
t1 = time.time()
chk(cfan.validation.ok, f"cotangent fan of P2 validates ({len(cfan)} elements, {t1-t0:.1f}s)")
for nm in base.prime_names:
    chk(prime_slice(cfan, nm).covers(), f"slice at {nm} covers")
sep = check_separated(cfan)
chk(sep.status == "SEPARATED", f"separated: {sep.status} via {sep.method}")
comp = check_complete(cfan)
t2 = time.time()
chk(comp.status == "COMPLETE", f"complete ({t2-t1:.1f}s), got {comp.status} {comp.reason}")

# ---- dP6 cotangent: generators only here, timing probe ----
t3 = time.time()
cot6 = cotangent_fan(fan_dp6())
chk(len(cot6) == 12, f"12 generators, got {len(cot6)}")
chk(all(is_pp(d) == "true" for d in cot6), "dP6 generators proper")
# the twelve covectors span three lines, so three marked points as for P2
chk(cot6[0].base.prime_names == ("P[0,1]", "P[1,0]", "P[1,1]"),
    f"dP6 base primes, got {cot6[0].base.prime_names}")
t4 = time.time()
print(f"   dP6 generator construction: {t4-t3:.1f}s")

# hirzebruch sanity via rank-2 route: F_a fans are smooth
for a in (0, 1, 2):
    cones = fan_hirzebruch(a)
    chk(len(cones) == 4, f"hirzebruch {a} has 4 cones")

chk(len(fan_p1()) == 2, "p1 fan")

print(f"\nall {ok} checks passed")
