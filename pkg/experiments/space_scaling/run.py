"""
Register width and prime count of the residue decision on the bundled
three-state PFA for n = 10, 100, 1000, 10000.

Writes space_scaling.csv under $OUTPUT (default: OUTPUT/ at the repo root).
"""
import csv
import logging
import os
from pathlib import Path

import afasim.automaton_text
import afasim.log
import afasim.logspace

logger = logging.getLogger("experiments.space_scaling")

LENGTHS = (10, 100, 1000, 10000)


def word_of_length(n):
    return ("a", "b", "b") * (n // 3) + ("a",) * (n % 3)


def main(output_dir):
    pfa = afasim.automaton_text.load_bundled("three_state_pfa")
    output_dir.mkdir(parents=True, exist_ok=True)
    with (output_dir / "space_scaling.csv").open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(("n", "r", "r_over_n", "p_r", "max_register_bits", "bound_bits"))
        for n in LENGTHS:
            decision = afasim.logspace.run_gt_cutpoint(pfa, word_of_length(n))
            trace = afasim.logspace.space_trace(decision)
            logger.info("%s", trace.describe())
            writer.writerow(
                (
                    n,
                    trace.r,
                    "{:.4f}".format(trace.r / n),
                    trace.largest_prime,
                    trace.max_register_bits,
                    trace.bound_bits,
                )
            )


if __name__ == "__main__":
    afasim.log.init_logging(level=logging.INFO)
    root = Path(__file__).parent.parent.parent
    main(Path(os.environ.get("OUTPUT", root / "OUTPUT")) / "space_scaling")
