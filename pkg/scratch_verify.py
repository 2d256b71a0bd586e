import sys, time
sys.path.insert(0, "src")
from fractions import Fraction as F
import random

from divfan.base import BaseVariety, QDivisor
from divfan.constructions import cotangent_fan, danilov_gizatullin, fan_p2
from divfan.fan import (Certificate, generate_fan, prime_slice, verify_certificate,
                        derive_intersection_certificate)
from divfan.geom import Cone, interval, polyhedron, ray_poly
from divfan.geom.polyhedron import TailedPolyhedron
from divfan.geom.linalg import vec
from divfan.ppdiv import PPDivisor, evaluate, localization_identity_check, localize
from divfan.base import divisor_degree

# 1. section-7 toric chart fan: prime slices complex?
A2 = BaseVariety.toric([Cone.from_rays([[1, 0], [0, 1]])])
rpos = Cone.from_rays([[1, 0]], dim=2)
rneg = Cone.from_rays([[-1, 0]], dim=2)
ch1 = PPDivisor(A2, rpos, {
    "D[1,0]": polyhedron([[0, 0], [0, 1]], [[1, 0]]),
    "D[0,1]": polyhedron([[0, 1], [0, 2]], [[1, 0]])})
ch2 = PPDivisor(A2, rneg, {
    "D[1,0]": polyhedron([[0, 0], [0, 1]], [[-1, 0]]),
    "D[0,1]": polyhedron([[0, -1], [0, -2]], [[-1, 0]])})
f7 = generate_fan([ch1, ch2])
for nm in ("D[1,0]", "D[0,1]"):
    s = prime_slice(f7, nm)
    print("slice", nm, "cells:", [(c.vertices, c.tail.rays) for c in s.nonempty_cells])
    print("   is_complex:", s.is_complex(), " covers:", s.covers())

# 2. cotangent P2 closure: maximal tails
t0 = time.time()
cot = cotangent_fan(fan_p2())
cfan = generate_fan(cot)
tails = {d.tail for d in cfan.divisors}
maximal = [c for c in tails if not any(d != c and d.contains_cone(c) for d in tails)]
hexa = {Cone.from_rays(rs).key() for rs in (
    [[1, 0], [1, 1]], [[1, 1], [0, 1]], [[0, 1], [-1, 0]],
    [[-1, 0], [-1, -1]], [[-1, -1], [0, -1]], [[0, -1], [1, 0]])}
print("cot tails:", len(tails), "maximal:", len(maximal),
      "== hexagon:", {c.key() for c in maximal} == hexa, f"({time.time()-t0:.1f}s)")
# barycentric subdivision built from fan_p2 directly
bary = set()
for c in fan_p2():
    a, b = c.rays
    m = tuple(x + y for x, y in zip(a, b))
    bary.add(Cone.from_rays([a, m]).key())
    bary.add(Cone.from_rays([m, b]).key())
print("barycentric == hexagon:", bary == hexa)

# 3. D-G: derived certificates for every generator triple combination
gens = danilov_gizatullin(2, 3)
dg = generate_fan(gens)
from divfan.fan import check_coherence
co = check_coherence(dg)
assert co.status == "coherent"
certs = dg.coherence_certificates
def get(i, j):
    c = certs[(min(i, j), max(i, j))]
    if i > j:
        c = Certificate.of(tuple(-x for x in c.u), {n: -v for n, v in c.constants})
    return c
n = len(dg.divisors)
bad = 0
tried = 0
for i in range(n):
    for j in range(i + 1, n):
        k = dg.face_matrix[(i, j)]
        for m in range(n):
            if m in (i, j):
                continue
            d = derive_intersection_certificate(get(i, m), get(j, m))
            tried += 1
            if not verify_certificate(dg.divisors[k], dg.divisors[m], d):
                bad += 1
                print("FAIL triple", i, j, m)
print(f"derived certificates: {tried} tried, {bad} failed")

# 4. localization identity, randomized prototype
rng = random.Random(7)
P1 = BaseVariety.proj_line(["p0", "p1", "inf"])

def rand_tail(dim):
    if dim == 1:
        return rng.choice([Cone.zero(1), Cone.from_rays([[1]]), Cone.from_rays([[-1]])])
    while True:
        k = rng.choice([0, 1, 2])
        rays = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(k)]
        c = Cone.from_rays([r for r in rays if any(r)], dim=2)
        if not c.lines:
            return c

def rand_poly(tail, dim):
    nv = rng.randint(1, 3)
    vs = [tuple(F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(dim))
          for _ in range(nv)]
    return TailedPolyhedron.proper(vs, tail.rays)

def rand_div(dim):
    tail = rand_tail(dim)
    coeffs = {}
    for nm in P1.prime_names:
        r = rng.random()
        if r < 0.2:
            continue
        if r < 0.3:
            coeffs[nm] = TailedPolyhedron.empty(tail)
        else:
            coeffs[nm] = rand_poly(tail, dim)
    return PPDivisor(P1, tail, coeffs)

def small_vectors(dim, bound):
    out = []
    if dim == 1:
        out = [(x,) for x in range(-bound, bound + 1)]
    else:
        out = [(x, y) for x in range(-bound, bound + 1) for y in range(-bound, bound + 1)]
    rng.shuffle(out)
    return out

import math
def sound_k(d, w, u, kmin):
    ks = [kmin]
    for nm in set(d.support):
        c = d.coeff(nm)
        if c.is_empty:
            continue
        m = c.eval_min(w)
        face = c.face_at(w)
        umin = min(sum(a * b for a, b in zip(u, v)) for v in face.vertices)
        for v in c.vertices:
            wv = sum(a * b for a, b in zip(w, v))
            if wv > m:
                uv = sum(a * b for a, b in zip(u, v))
                need = (umin - uv) / (wv - m)
                ks.append(need)
    import math as _m
    k = max(ks)
    k = int(k) + 1 if k == int(k) else _m.ceil(k)
    return max(k, kmin)

done = 0
attempts = 0
while done < 120 and attempts < 4000:
    attempts += 1
    dim = rng.choice([1, 2])
    d = rand_div(dim)
    w = None
    for cand in small_vectors(dim, 3):
        if any(cand) and d.tail_poly.eval_min(cand) != math.inf and d.tail_poly.eval_min(cand) != -math.inf:
            w = cand
            break
    if w is None:
        continue
    ev = evaluate(d, w)
    lam = 1
    for _, cval in ev.coeffs:
        lam = lam * cval.denominator // math.gcd(lam, cval.denominator)
    wp = tuple(lam * x for x in w)
    evp = evaluate(d, wp)
    degwp = divisor_degree(P1, evp)
    assert degwp.denominator == 1
    if degwp < 0:
        continue
    t = int(degwp)
    names = list(P1.prime_names)
    alloc = {nm: 0 for nm in names}
    for _ in range(t):
        alloc[rng.choice(names)] += 1
    zs = QDivisor.of(alloc)
    loc_tail_ok = False
    try:
        loc = localize(d, wp, zs)
        loc_tail_ok = True
    except ValueError as e:
        print("localize raised:", e)
        continue
    u = None
    for cand in small_vectors(dim, 3):
        if loc.tail_poly.eval_min(cand) not in (math.inf, -math.inf):
            u = cand
            break
    if u is None:
        continue
    kmin = 0
    while d.tail_poly.eval_min(tuple(a + kmin * b for a, b in zip(u, wp))) == -math.inf:
        kmin += 1
        if kmin > 60:
            break
    if kmin > 60:
        continue
    k = sound_k(d, wp, u, kmin)
    for kk in (k, k + 2):
        okk = localization_identity_check(d, wp, zs, u, kk)
        if not okk:
            print("IDENTITY FAIL", dim, d, "w", wp, "zs", zs, "u", u, "k", kk)
            done = 10 ** 9
            break
    done += 1
print("localization instances verified:", done, "attempts:", attempts)
