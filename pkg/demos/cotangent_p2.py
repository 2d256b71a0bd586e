"""The cotangent bundle of the projective plane as a divisorial fan.

cotangent_fan turns a complete smooth fan of rank 2 into the divisorial
fan of the cotangent bundle of the corresponding surface: one generator
per flag (cone, ray), each a pp-divisor over a projective line whose
points are indexed by the rays of the input fan. For the plane this
gives six generators whose tail cones split each quadrant-like cone of
the plane fan at the sum of its rays.

Pass --dp6 to run the del Pezzo variant instead (twelve generators, a
noticeably bigger closure).
"""

import sys

from divfan.constructions import cotangent_fan, fan_dp6, fan_p2
from divfan.fan import (check_complete, check_separated, generate_fan,
                        prime_slice)
from divfan.render import render_slices


def main():
    dp6 = "--dp6" in sys.argv[1:]
    name = "dp6" if dp6 else "p2"
    gens = cotangent_fan(fan_dp6() if dp6 else fan_p2())
    print(f"{len(gens)} generators over the base with primes "
          f"{gens[0].base.prime_names}")
    for d in gens[:3]:
        print(" ", d)
    print("  ...")

    fan = generate_fan(gens)
    print(f"closure: {len(fan)} elements ({fan.validation.summary()})")

    tails = {d.tail for d in fan.divisors}
    maximal = [c for c in tails
               if not any(o != c and o.contains_cone(c) for o in tails)]
    print(f"tail fan: {len(tails)} cones, {len(maximal)} maximal:")
    for c in sorted(maximal, key=lambda c: c.rays):
        print("  rays", c.rays)

    sep = check_separated(fan)
    print(f"separated: {sep.status} ({sep.method})")
    print(f"complete: {check_complete(fan).status}")

    slices = [prime_slice(fan, nm) for nm in fan.prime_support]
    svg = render_slices(slices, list(fan.prime_support))
    out = f"cotangent_{name}_slices.svg"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
