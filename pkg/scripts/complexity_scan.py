#!/usr/bin/env python3
"""Runtime scaling of the unary equivalence decision.

Builds equivalent float-mode pairs of growing combined size, runs both scan
strategies, and prints a table plus the fitted log-log slope of the
full-bound runtime.  The full-bound scan visits (n1+n2)**4 + k - 1 lengths
with one n x n product each, so the time should grow like a low-degree
polynomial in n; the span strategy stops after the tracked span stabilizes,
which happens within n**2-ish lengths on generic inputs.

Usage: python scripts/complexity_scan.py [max_half_size]
"""

import math
import sys
import time

from mlqfa.equivalence import (STRATEGY_FULL, STRATEGY_SPAN,
                               decide_equivalence_unary)
from mlqfa.gallery import equivalent_variant, random_qfa
from mlqfa.linalg import FLOAT


def timed(fn):
    start = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - start


def main() -> None:
    max_half = int(sys.argv[1]) if len(sys.argv) > 1 else 4
    k = 2
    rows = []
    print(f"{'n':>4} {'bound':>7} {'full (s)':>10} {'span (s)':>10} "
          f"{'scanned':>8} {'i0':>5}")
    for half in range(1, max_half + 1):
        a = random_qfa(900 + half, half, k, 1, FLOAT)
        b = equivalent_variant(a, half)
        n = a.n + b.n
        bound = n ** 4 + k - 1
        full_verdict, full_time = timed(
            lambda: decide_equivalence_unary(a, b, strategy=STRATEGY_FULL))
        span_verdict, span_time = timed(
            lambda: decide_equivalence_unary(a, b, strategy=STRATEGY_SPAN))
        assert full_verdict.equivalent and span_verdict.equivalent
        rows.append((n, full_time))
        print(f"{n:>4} {bound:>7} {full_time:>10.4f} {span_time:>10.4f} "
              f"{span_verdict.checked_up_to:>8} "
              f"{span_verdict.stabilization_index or '-':>5}")
    if len(rows) >= 2:
        (n0, t0), (n1, t1) = rows[0], rows[-1]
        slope = (math.log(t1) - math.log(t0)) / (math.log(n1) - math.log(n0))
        print(f"\nlog-log slope of full-bound runtime: {slope:.2f}")


if __name__ == "__main__":
    main()
