"""Two charts that glue to a non-separated surface.

The charts live over the affine plane and come out of the toric
downgrade: each is the image of a 4-dimensional cone under the quotient
by a rank-2 subtorus. Their pairwise intersection is a perfectly good
open sub-divisor, the fan validates, and every prime slice is a clean
subdivision. Separatedness still fails, and the failure is visible in
one weighted slice: the intersection chart misses a point that both
charts share.
"""

from divfan.downgrade import DowngradeData, downgrade_cone
from divfan.fan import check_separated, generate_fan, prime_slice
from divfan.geom import Cone
from divfan.ppdiv import WeightFunction, weighted_sum

# exponent inequalities of the two chart rings, last two coordinates
# graded by the acting torus
CHART1 = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, -1, 0, 1), (1, 2, 0, -1)]
CHART2 = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, -1, 0), (0, 2, 0, 1), (1, -1, 0, -1)]


def main():
    data = DowngradeData.from_deg([[0, 0, 1, 0], [0, 0, 0, 1]])
    charts = [downgrade_cone(Cone.from_halfspaces(4, exps), data)
              for exps in (CHART1, CHART2)]
    for i, ch in enumerate(charts, 1):
        print(f"chart {i}: {ch}")

    fan = generate_fan(charts)
    print()
    print(f"fan: {len(fan)} elements ({fan.validation.summary()})")
    for note in fan.validation.skipped_checks:
        print(f"  note: {note}")
    for nm in fan.prime_support:
        sl = prime_slice(fan, nm)
        print(f"slice at {nm}: complex = {sl.is_complex()}, "
              f"{len(sl.nonempty_cells)} nonempty cells")

    sep = check_separated(fan)
    print()
    print(f"separated: {sep.status}")
    mu = sep.witness_mu
    print(f"witness weights: {mu}")
    i, j = sep.witness_pair
    lhs = weighted_sum(fan.intersection_of(i, j), mu)
    rhs = weighted_sum(fan.divisors[i], mu).intersect(
        weighted_sum(fan.divisors[j], mu))
    print(f"  weighted intersection chart: {lhs}")
    print(f"  intersection of weighted charts: {rhs}")

    # the defect is invisible at uniform weights
    one = WeightFunction.of({nm: 1 for nm in fan.prime_support})
    l1 = weighted_sum(fan.intersection_of(i, j), one)
    r1 = weighted_sum(fan.divisors[i], one).intersect(
        weighted_sum(fan.divisors[j], one))
    print(f"at weight 1 everywhere both sides agree: {l1 == r1}")


if __name__ == "__main__":
    main()
