"""Exercise the counting Bloom filter that backs every datastore indicator.

A plain Bloom filter cannot forget, but an LRU cache evicts constantly, so
the indicator uses 8-bit counters: insert increments, evict decrements, and
membership asks whether all probed counters are positive. The demo sizes a
filter for a 1000-item store at a 2% false-positive target, then measures
the real rate and demonstrates that deletions never create false negatives.
"""

import random

from dss import CountingBloomFilter, size_for_target_fpr

CAPACITY, TARGET_FPR, HASHES = 1000, 0.02, 5

m = size_for_target_fpr(CAPACITY, TARGET_FPR, HASHES)
print(f"capacity {CAPACITY}, target fpr {TARGET_FPR}, {HASHES} hash probes")
print(f"-> {m} counters ({m / CAPACITY:.2f} per item, one byte each)")

f = CountingBloomFilter(m, HASHES, seed=7)
for item in range(CAPACITY):
    f.insert(item)

probes = 100_000
false_positives = sum(1 for item in range(CAPACITY, CAPACITY + probes) if f.query(item))
print(f"filled to capacity: {false_positives / probes:.4f} empirical fpr over {probes} absent probes")

# churn: evict and admit like an LRU cache would, tracking ground truth
rng = random.Random(99)
present = set(range(CAPACITY))
for step in range(50_000):
    out = rng.choice(sorted(present))
    f.remove(out)
    present.discard(out)
    new = CAPACITY + probes + step
    f.insert(new)
    present.add(new)

false_negatives = sum(1 for item in present if not f.query(item))
print(f"after 50k evict/admit pairs: {false_negatives} false negatives (must be 0)")

still_fp = sum(
    1 for item in range(2 * CAPACITY + probes + 60_000, 2 * CAPACITY + 2 * probes + 60_000)
    if f.query(item)
)
print(f"false-positive rate after churn: {still_fp / probes:.4f} (deletions keep it near target)")
