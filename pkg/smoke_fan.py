import sys
sys.path.insert(0, "src")
from fractions import Fraction as F

from divfan.base import BaseVariety
from divfan.geom import Cone, interval, polyhedron, ray_poly
from divfan.geom.polyhedron import TailedPolyhedron
from divfan.ppdiv import PPDivisor, WeightFunction, evaluate, weighted_sum, is_pp
from divfan.fan import (
    Certificate, FanError, check_coherence, check_complete, check_separated,
    derive_intersection_certificate, generate_fan, intersect_divisors, is_face,
    prime_slice, slice_fan, tail_slice, verify_certificate,
)

ok = 0
def chk(cond, msg):
    global ok
    assert cond, msg
    ok += 1
    print("ok", msg)

# ---- Danilov-Gizatullin trio on P^1, r=2 s=3 ----
P1 = BaseVariety.proj_line(["p0", "p1", "inf"])
zero1 = Cone.zero(1)
pos1 = Cone.from_rays([[1]])
neg1 = Cone.from_rays([[-1]])
r, s = 2, 3
D0 = PPDivisor(P1, zero1, {
    "p0": interval(F(-1, r), 0), "p1": interval(0, F(1, s)),
    "inf": TailedPolyhedron.empty(zero1)})
Dp = PPDivisor(P1, pos1, {
    "p0": ray_poly([0], [1]), "p1": ray_poly([F(1, s)], [1]),
    "inf": ray_poly([0], [1])})
Dm = PPDivisor(P1, neg1, {
    "p0": ray_poly([F(-1, r)], [-1]), "p1": ray_poly([0], [-1]),
    "inf": ray_poly([0], [-1])})

chk(Dp.support == ("p1",), "trivial cone coefficients dropped")
chk(is_pp(D0) == "true" and is_pp(Dp) == "true" and is_pp(Dm) == "true", "D-G generators proper")

c = intersect_divisors(D0, Dp)
chk(c.coeff("p0") == polyhedron([[0]]), "D0^D+ at p0 is {0}")
chk(c.coeff("p1") == polyhedron([[F(1, s)]]), "D0^D+ at p1 is {1/s}")
chk(c.coeff("inf").is_empty, "D0^D+ empty at inf")

chk(bool(is_face(c, D0)), "intersection is a face of D0")
chk(bool(is_face(c, Dp)), "intersection is a face of D+")
chk(bool(is_face(D0, D0)), "reflexivity")
chk(not is_face(D0, Dp), "D0 itself is not a face of D+")

dg = generate_fan([D0, Dp, Dm])
chk(len(dg) == 7, f"D-G closure has 7 elements, got {len(dg)}")
chk(dg.validation.ok, "D-G fan validates")

ev = evaluate(D0, [1])
chk(ev.as_dict() == {"p0": F(-1, 2)}, "evaluate(D0, 1)")
ev = evaluate(D0, [-1])
chk(ev.as_dict() == {"p1": F(-1, 3)}, "evaluate(D0, -1)")

co = check_coherence(dg)
chk(co.status == "coherent", "D-G fan is coherent")
for (i, j), cert in co.certificates.items():
    chk(verify_certificate(dg.divisors[i], dg.divisors[j], cert),
        f"certificate ({i},{j}) verifies")
# the known certificate for (D0, D+): u=1, c_p0=0, c_p1=1/s, c_inf=-1
cert = Certificate.of((1,), {"p0": 0, "p1": F(1, s), "inf": -1})
chk(verify_certificate(D0, Dp, cert), "hand certificate (D0,D+) verifies")
chk(not verify_certificate(D0, Dm, cert), "hand certificate fails on wrong pair")

sep = check_separated(dg)
chk(sep.status == "SEPARATED" and sep.method == "curve base", "D-G separated (curve)")
comp = check_complete(dg)
chk(comp.status == "COMPLETE", f"D-G complete, got {comp.status} {comp.reason}")

ts = tail_slice(dg)
chk(ts.is_complex() and ts.covers(), "D-G tail slice complex and covering")
ps = prime_slice(dg, "p0")
chk(ps.is_complex() and ps.covers(), "D-G p0 slice complex and covering")

# derived certificate for a triple, constructively
idx = {d: i for i, d in enumerate(dg.divisors)}
i0, ip, im = idx[D0], idx[Dp], idx[Dm]
pair = lambda a, b: (min(a, b), max(a, b))
k0p = dg.face_matrix[pair(i0, ip)]
certs = dg.coherence_certificates
def get(i, j):
    c = certs[pair(i, j)]
    if i > j:  # reverse orientation
        c = Certificate.of(tuple(-x for x in c.u), {n: -v for n, v in c.constants})
    return c
dcert = derive_intersection_certificate(get(i0, im), get(ip, im))
chk(verify_certificate(dg.divisors[k0p], dg.divisors[im], dcert),
    "derived certificate for (D0^D+, D-) verifies")

# ---- blow-up face refutation on P^1 ----
P1b = BaseVariety.proj_line(["0", "inf"])
big = PPDivisor(P1b, pos1, {"0": ray_poly([0], [1]), "inf": ray_poly([1], [1])})
small = PPDivisor(P1b, pos1, {"0": ray_poly([0], [1]),
                              "inf": TailedPolyhedron.empty(pos1)})
res = is_face(small, big)
chk(not res, "open-embedding refused (degree obstruction)")
chk(bool(is_face(small, small)), "small is a face of itself")
chk(is_pp(big) == "true", "blow-up divisor proper")

# proper-ness refutation: {1} over {0} tail on P^1
bad = PPDivisor(P1b, zero1, {"0": polyhedron([[1]])})
chk(is_pp(bad) == "false", "degree outside tail refutes properness")

# ---- section 6 pair: non-coherent ----
A1 = BaseVariety.affine_line(["D", "E"])
d1 = PPDivisor(A1, zero1, {"D": interval(-1, 0), "E": interval(0, 1)})
d2 = PPDivisor(A1, zero1, {"D": interval(0, 1), "E": interval(-1, 0)})
f6 = generate_fan([d1, d2])
chk(f6.validation.ok, "section-6 pair is a valid fan on the affine line")
co6 = check_coherence(f6)
chk(co6.status == "not_coherent", "section-6 pair refuted coherent")
sep6 = check_separated(f6)
chk(sep6.status == "SEPARATED", "curve base separated regardless")
mu11 = WeightFunction.of({"D": 1, "E": 1})
sl = slice_fan(f6, mu11)
chk(not sl.is_complex(), "weight-1 slice is not a complex")
chk(sl.cells[0] == interval(-1, 1) and sl.cells[1] == interval(-1, 1),
    "slice cells are [-1,1], [-1,1]")

# same data on P^2 with incident lines: rejected
P2 = BaseVariety.proj_space(2, [("D", 1), ("E", 1)])
g1 = PPDivisor(P2, zero1, {"D": interval(-1, 0), "E": interval(0, 1)})
g2 = PPDivisor(P2, zero1, {"D": interval(0, 1), "E": interval(-1, 0)})
try:
    generate_fan([g1, g2])
    chk(False, "unreachable")
except FanError as e:
    chk(e.report.complex_failures, "incident-pair data rejected: complex failure")
    chk(e.report.face_failures, "incident-pair data rejected: face failure")

# ---- section 7 torus chart fan on A^2: not separated ----
A2 = BaseVariety.toric([Cone.from_rays([[1, 0], [0, 1]])])
chk(A2.prime_names == ("D[0,1]", "D[1,0]"), f"A2 primes {A2.prime_names}")
rpos = Cone.from_rays([[1, 0]], dim=2)
rneg = Cone.from_rays([[-1, 0]], dim=2)
ch1 = PPDivisor(A2, rpos, {
    "D[1,0]": polyhedron([[0, 0], [0, 1]], [[1, 0]]),
    "D[0,1]": polyhedron([[0, 1], [0, 2]], [[1, 0]])})
ch2 = PPDivisor(A2, rneg, {
    "D[1,0]": polyhedron([[0, 0], [0, 1]], [[-1, 0]]),
    "D[0,1]": polyhedron([[0, -1], [0, -2]], [[-1, 0]])})
f7 = generate_fan([ch1, ch2])
chk(f7.validation.ok, "chart fan accepted")
chk(any("undecided" in n for n in f7.validation.skipped_checks),
    "toric base: undecidable checks recorded as skipped")
co7 = check_coherence(f7)
chk(co7.status == "not_coherent", "charts not coherent")
sep7 = check_separated(f7)
chk(sep7.status == "NOT_SEPARATED", "charts not separated")
mu = sep7.witness_mu
chk(mu.weight("D[1,0]") == 2 and mu.weight("D[0,1]") == 1, f"witness mu, got {mu}")
lhs = weighted_sum(f7.intersection_of(0, 1), mu)
rhs = weighted_sum(ch1, mu).intersect(weighted_sum(ch2, mu))
chk(lhs.is_empty and rhs == polyhedron([[0, 1]]), "witness violation recomputed")

# ---- section 7 last example on P^2: complete base, not complete ----
P2de = BaseVariety.proj_space(2, [("D", 1), ("E", 1)])
e1 = PPDivisor(P2de, neg1, {"D": ray_poly([-1], [-1]), "E": ray_poly([0], [-1])})
e2 = PPDivisor(P2de, zero1, {"D": interval(-1, 0), "E": TailedPolyhedron.empty(zero1)})
e3 = PPDivisor(P2de, zero1, {"D": TailedPolyhedron.empty(zero1), "E": interval(0, 1)})
e4 = PPDivisor(P2de, pos1, {"D": ray_poly([0], [1]), "E": ray_poly([1], [1])})
f7b = generate_fan([e1, e2, e3, e4])
chk(f7b.validation.ok, "P^2 example accepted")
co7b = check_coherence(f7b)
chk(co7b.status == "coherent", "P^2 example coherent")
sep7b = check_separated(f7b)
chk(sep7b.status == "SEPARATED" and sep7b.method == "coherent", "separated by coherence")
for name in ("D", "E"):
    chk(prime_slice(f7b, name).covers(), f"slice at {name} covers")
comp7b = check_complete(f7b)
chk(comp7b.status == "NOT_COMPLETE", f"not complete, got {comp7b.status}")
chk(comp7b.witness_mu.weight("D") == 1 and comp7b.witness_mu.weight("E") == 1,
    f"witness mu = (1,1), got {comp7b.witness_mu}")

print(f"\nall {ok} checks passed")
