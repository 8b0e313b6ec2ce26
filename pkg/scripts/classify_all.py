#!/usr/bin/env python3
"""Classify every built-in du Val type and print a summary table."""

from duval_kind.classify import classify


def main() -> int:
    cases = (
        [("A", n) for n in range(1, 13)]
        + [("D", n) for n in range(4, 11)]
        + [("E", n) for n in (6, 7, 8)]
    )
    print(f"{'type':6} {'kind':8} {'reduced':8} fundamental cycle")
    for type_, n in cases:
        report = classify(type_, n)
        cycle = " ".join(str(c) for c in report.fundamental_cycle.coefficients)
        print(
            f"{report.input_label:6} {report.kind.value:8} "
            f"{'yes' if report.reduced else 'no':8} {cycle}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
