"""A complete K*-surface from two interval coefficients.

danilov_gizatullin(r, s) builds three pp-divisors on the projective
line: an inner piece whose coefficients are the intervals [-1/r, 0] and
[0, 1/s], and two half-infinite companions that complete the surface in
the positive and negative weight directions. This script closes them
into a divisorial fan, runs every global check, and leaves behind a
JSON document plus an SVG of the slices.

Run from anywhere; output lands in the working directory.
"""

from divfan import io
from divfan.constructions import danilov_gizatullin
from divfan.fan import (check_coherence, check_complete, check_separated,
                        generate_fan, prime_slice, tail_slice)
from divfan.ppdiv import evaluate
from divfan.render import render_slices


def main():
    inner, upper, lower = danilov_gizatullin(2, 3)
    print("generators:")
    for d in (inner, upper, lower):
        print(" ", d)

    print()
    print("evaluations of the inner piece:")
    for u in (1, -1):
        print(f"  u = {u:+d}: {evaluate(inner, [u])}")

    fan = generate_fan([inner, upper, lower])
    print()
    print(f"closure: {len(fan)} elements ({fan.validation.summary()})")

    co = check_coherence(fan)
    print(f"coherent: {co.status}")
    u, consts = co.certificates[(0, 1)].u, co.certificates[(0, 1)].constants
    print(f"  sample certificate for pair (0, 1): u = {u}, constants = {dict(consts)}")
    sep = check_separated(fan)
    print(f"separated: {sep.status} ({sep.method})")
    print(f"complete: {check_complete(fan).status}")

    doc = io.FanDocument(inner.base, [inner, upper, lower])
    io.save_document(doc, "kstar_surface.json")
    slices = [tail_slice(fan)] + [prime_slice(fan, nm) for nm in fan.prime_support]
    svg = render_slices(slices, ["tail"] + list(fan.prime_support))
    with open("kstar_surface.svg", "w", encoding="utf-8") as fh:
        fh.write(svg)
    print()
    print("wrote kstar_surface.json and kstar_surface.svg")


if __name__ == "__main__":
    main()
