"""Walk through the expected-cost objective on a tiny three-store example.

A client wants one item. Three datastores answer "probably here" through
their membership indicators, but each positive answer is wrong with its own
misindication probability. Accessing a set D of stores costs the sum of
their access costs, plus the miss penalty when none of them actually holds
the item:

    phi(D) = sum(cost_j) + beta * prod(rho_j)

This script enumerates every subset and shows where each strategy lands.
"""

from itertools import combinations

from dss import (
    DatastoreProfile,
    SelectionContext,
    expected_cost,
    select_cpi,
    select_epi,
    select_exhaustive,
    select_pot,
)

BETA = 100.0

stores = (
    DatastoreProfile(id=1, access_cost=1.0, mis_ratio=0.50),
    DatastoreProfile(id=2, access_cost=2.0, mis_ratio=0.30),
    DatastoreProfile(id=3, access_cost=5.0, mis_ratio=0.10),
)
ctx = SelectionContext(stores, BETA)

print(f"miss penalty beta = {BETA}")
print(f"{'subset':<12} {'access':>7} {'miss prob':>10} {'phi':>8}")
for r in range(len(stores) + 1):
    for combo in combinations(stores, r):
        cost = expected_cost(combo, BETA)
        label = "{" + ",".join(str(p.id) for p in combo) + "}"
        print(f"{label:<12} {cost.access_cost:>7.1f} {cost.miss_ratio:>10.4f} {cost.total:>8.3f}")

print()
print("Cheapest-positive-indication accesses one store and eats the risk;")
print("every-positive-indication buys certainty with access cost; the")
print("potential-function strategy and the brute-force optimum sit between.")
print()
for name, strategy in [
    ("cheapest positive", select_cpi),
    ("every positive", select_epi),
    ("potential prefix", select_pot),
    ("exhaustive optimum", select_exhaustive),
]:
    chosen = strategy(ctx)
    ids = "{" + ",".join(str(p.id) for p in chosen) + "}"
    print(f"{name:<20} -> {ids:<8} phi = {expected_cost(chosen, BETA).total:.3f}")
