#!/usr/bin/env python3
"""Classify every gallery DFA and print the structural reports.

Shows the intended reading of the reports side by side: the smallest
window size a zero-error quantum acceptor needs (minimal_k), whether any
windowed QFA can accept the language at all (has_f false), and whether a
measure-many acceptor can beat probability 7/9 (mm_over_79).
"""

import json

from mlqfa.analysis import classify
from mlqfa.gallery import build_lk_dfa, build_named_dfa
from mlqfa.serialize import report_to_json


def main() -> None:
    fixtures = [("lk k=2", build_lk_dfa(2)),
                ("lk k=3", build_lk_dfa(3)),
                ("lk k=4", build_lk_dfa(4)),
                ("astar-bstar", build_named_dfa("astar-bstar")),
                ("akv", build_named_dfa("akv")),
                ("astar-b-a2star-a", build_named_dfa("astar-b-a2star-a"))]
    for name, dfa in fixtures:
        report = report_to_json(classify(dfa, max_k=4))
        print(f"== {name} ==")
        print(json.dumps(report, indent=2))
        print()


if __name__ == "__main__":
    main()
