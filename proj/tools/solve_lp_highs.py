#!/usr/bin/env python3
"""Solve an exported LP file with HiGHS and write a `name value` solution.

Usage: solve_lp_highs.py MODEL.lp SOLUTION.txt

The solution file is the format `geoind solve --import-solution` reads:
one `variable_name value` pair per line, `#` comments ignored.
Exit status is 0 when HiGHS reports an optimal solution, 3 otherwise.
"""

import sys
import time

import highspy


def main(argv):
    if len(argv) != 3:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    model_path, solution_path = argv[1], argv[2]

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("primal_feasibility_tolerance", 1e-10)
    h.setOptionValue("dual_feasibility_tolerance", 1e-10)
    if h.readModel(model_path) != highspy.HighsStatus.kOk:
        print(f"cannot read {model_path}", file=sys.stderr)
        return 3
    start = time.monotonic()
    h.run()
    elapsed = time.monotonic() - start
    status = h.getModelStatus()
    if status != highspy.HighsModelStatus.kOptimal:
        print(f"HiGHS status: {h.modelStatusToString(status)}", file=sys.stderr)
        return 3

    lp = h.getLp()
    values = h.getSolution().col_value
    with open(solution_path, "w", newline="\n") as out:
        out.write(f"# solver: HiGHS {h.version()}\n")
        out.write(f"# status: {h.modelStatusToString(status)}\n")
        out.write(f"# objective: {h.getInfo().objective_function_value!r}\n")
        out.write(f"# wall_time_s: {elapsed:.3f}\n")
        for name, value in zip(lp.col_names_, values):
            out.write(f"{name} {value!r}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
