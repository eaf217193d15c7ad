"""Command-line surface: worked examples as golden runs, measures on state
files, figure data, and clock demos.

Exit codes: 0 success, 1 a golden tolerance check failed, 2 bad input.
Payload-emitting commands (symmetric-state, figure-data, twirl) write their
payload to --output or stdout and their verification records to stderr;
report commands (example, measure, pwc-demo) write records to --output or
stdout. Identical inputs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import statefile
from .measures import (
    asymmetry,
    build_cq_state,
    interaction_information,
    mutual_asymmetry,
    mutual_asymmetry_relent,
)
from .presets import (
    EXAMPLE_NAMES,
    figure_states,
    symmetric_state_closed_form,
    worked_example,
)
from .pwc import (
    angle_amplitude,
    conditional_probability,
    corrupt_tick,
    history_from_projection,
    psw_clock,
    relational_fidelities,
    schrodinger_residual,
)
from .qmat import HermitianOperator, partial_trace
from .statefile import StateFileError
from .symmetry import (
    ChargeSpectrum,
    dephase,
    finite_design,
    sectors,
    total_charges,
    twirl_design,
    twirl_quadrature,
)

SCALAR_TOL = 1e-9
MATRIX_TOL = 1e-12

_RECORD_FIELDS = ("quantity", "value", "expected", "tolerance", "passed", "inputs")


class Record:
    """One reported quantity, optionally checked against a golden value."""

    def __init__(self, quantity, value, inputs, expected=None, tolerance=None):
        self.quantity = quantity
        self.value = float(value)
        self.inputs = inputs
        self.expected = None if expected is None else float(expected)
        self.tolerance = None if tolerance is None else float(tolerance)
        if self.expected is None:
            self.passed = None
        else:
            self.passed = abs(self.value - self.expected) <= (self.tolerance or 0.0)

    def row(self) -> dict:
        return {field: getattr(self, field) for field in _RECORD_FIELDS}


def format_records(records, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.row() for r in records], indent=2) + "\n"
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_RECORD_FIELDS)
    for r in records:
        row = r.row()
        writer.writerow(["" if row[f] is None else row[f] for f in _RECORD_FIELDS])
    return out.getvalue()


def _emit(text: str, output: str | None, stream=None) -> None:
    if output:
        with open(output, "w") as fp:
            fp.write(text)
    else:
        (stream or sys.stdout).write(text)


def _exit_code(records) -> int:
    return 1 if any(r.passed is False for r in records) else 0


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_example(args) -> int:
    ex = worked_example(args.name, args.d)
    tol = args.tolerance if args.tolerance is not None else SCALAR_TOL
    joint = ex.joint()
    total = total_charges(ex.s_charges, ex.r_charges)
    values = (
        ("asymmetry_s", asymmetry(ex.rho_s, sectors(ex.s_charges)), ex.expected.a_s),
        ("asymmetry_r", asymmetry(ex.rho_r, sectors(ex.r_charges)), ex.expected.a_r),
        ("asymmetry_joint", asymmetry(joint, sectors(total)), ex.expected.a_sr),
        (
            "mutual_asymmetry",
            mutual_asymmetry(ex.rho_s, ex.rho_r, ex.s_charges, ex.r_charges),
            ex.expected.mutual,
        ),
    )
    records = [
        Record(name, value, ex.describe(), expected=expected, tolerance=tol)
        for name, value, expected in values
    ]
    _emit(format_records(records, args.format), args.output)
    return _exit_code(records)


def cmd_symmetric_state(args) -> int:
    ex = worked_example(args.name, args.d)
    total = total_charges(ex.s_charges, ex.r_charges)
    computed = dephase(ex.joint(), sectors(total))
    closed = symmetric_state_closed_form(args.name, args.d)
    deviation = float(np.abs(computed.matrix - closed.matrix).max())
    tol = args.tolerance if args.tolerance is not None else MATRIX_TOL
    record = Record(
        "max_entry_deviation",
        deviation,
        ex.describe(),
        expected=0.0,
        tolerance=tol,
    )
    _emit(statefile.dumps(computed, ex.s_charges, ex.r_charges), args.output)
    sys.stderr.write(format_records([record], args.format))
    return _exit_code([record])


def _loaded_total(loaded):
    return loaded.total()


def cmd_measure(args) -> int:
    loaded = statefile.load(args.file)
    tol = args.tolerance if args.tolerance is not None else SCALAR_TOL
    inputs = f"{args.file} dims {loaded.state.dims}"
    if args.which == "asymmetry":
        value = asymmetry(loaded.state, sectors(_loaded_total(loaded)))
        records = [Record("asymmetry", value, inputs)]
    elif args.which in ("relent", "interaction"):
        if not loaded.is_joint:
            raise StateFileError(f"{args.which} needs a two-subsystem state file")
        if args.which == "relent":
            gap = mutual_asymmetry_relent(
                loaded.state, loaded.charges_s, loaded.charges_r, agreement_tol=tol
            )
            records = [
                Record("mutual_asymmetry_entropy_form", gap.entropy_difference, inputs),
                Record("mutual_asymmetry_relative_entropy_form", gap.relative_entropy, inputs),
            ]
        else:
            cq = build_cq_state(loaded.state, loaded.charges_s, loaded.charges_r)
            records = [
                Record(
                    "interaction_information",
                    interaction_information(cq),
                    f"{inputs}, {cq.size}-point register",
                )
            ]
    elif args.which == "mutual":
        if args.marginal_s and args.marginal_r:
            part_s = statefile.load(args.marginal_s)
            part_r = statefile.load(args.marginal_r)
            if part_s.is_joint or part_r.is_joint:
                raise StateFileError("marginal files must hold single subsystems")
            rho_s, s_charges = part_s.state, part_s.charges_s
            rho_r, r_charges = part_r.state, part_r.charges_s
        elif args.product:
            if not loaded.is_joint:
                raise StateFileError("--product needs a two-subsystem state file")
            rho_s = partial_trace(loaded.state, 0)
            rho_r = partial_trace(loaded.state, 1)
            s_charges, r_charges = loaded.charges_s, loaded.charges_r
        else:
            raise StateFileError(
                "the mutual asymmetry sum form is defined in the product regime: "
                "declare it with --product or supply --marginal-s/--marginal-r"
            )
        value = mutual_asymmetry(rho_s, rho_r, s_charges, r_charges)
        records = [Record("mutual_asymmetry", value, inputs)]
    else:  # pragma: no cover - argparse restricts choices
        raise StateFileError(f"unknown measure {args.which!r}")
    _emit(format_records(records, args.format), args.output)
    return _exit_code(records)


def _first_minimum(values: np.ndarray, start: int, step: int) -> int:
    n = values.size
    i = start
    for _ in range(n):
        nxt = (i + step) % n
        if values[nxt] >= values[i]:
            return i
        i = nxt
    return i


def cmd_figure_data(args) -> int:
    d = args.d
    samples = args.samples
    if samples < 16:
        raise StateFileError(f"need at least 16 samples, got {samples}")
    psi_s, psi_r = figure_states(args.which, d)
    thetas = 2.0 * np.pi * np.arange(samples) / samples
    amp_s = angle_amplitude(psi_s, thetas)
    amp_r = angle_amplitude(psi_r, thetas)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["theta", "re_psi_s", "im_psi_s", "abs2_psi_s", "re_psi_r", "im_psi_r", "abs2_psi_r"]
    )
    abs2_r = np.abs(amp_r) ** 2
    for i in range(samples):
        writer.writerow(
            [
                repr(float(thetas[i])),
                repr(float(amp_s[i].real)),
                repr(float(amp_s[i].imag)),
                repr(float(abs(amp_s[i]) ** 2)),
                repr(float(amp_r[i].real)),
                repr(float(amp_r[i].imag)),
                repr(float(abs2_r[i])),
            ]
        )
    _emit(out.getvalue(), args.output)

    grid_step = 2.0 * np.pi / samples
    peak = int(np.argmax(abs2_r))
    right = _first_minimum(abs2_r, peak, +1)
    left = _first_minimum(abs2_r, peak, -1)
    half_width = ((right - peak) % samples) * grid_step
    tol = args.tolerance if args.tolerance is not None else grid_step
    records = [
        Record("clock_peak_theta", thetas[peak], f"{args.which} d={d}", expected=0.0, tolerance=tol),
        Record(
            "clock_first_zero_right",
            thetas[right],
            f"{args.which} d={d}",
            expected=2.0 * np.pi / d,
            tolerance=tol,
        ),
        Record(
            "clock_first_zero_left",
            thetas[left],
            f"{args.which} d={d}",
            expected=2.0 * np.pi - 2.0 * np.pi / d,
            tolerance=tol,
        ),
        Record(
            "clock_main_lobe_half_width",
            half_width,
            f"{args.which} d={d}",
            expected=2.0 * np.pi / d,
            tolerance=tol,
        ),
    ]
    sys.stderr.write(format_records(records, args.format))
    return _exit_code(records)


def cmd_pwc_demo(args) -> int:
    d = args.d
    charges = tuple(int(c) for c in args.hs.split(","))
    clock = psw_clock(d)
    ds = len(charges)
    psi0 = np.ones(ds) / np.sqrt(ds)
    history = history_from_projection(psi0, ChargeSpectrum(charges), clock)
    if args.corrupt:
        history = corrupt_tick(history, d // 2)
    inputs = f"d={d} charges={charges}" + (" corrupted" if args.corrupt else "")
    tol = args.tolerance if args.tolerance is not None else SCALAR_TOL

    records = [
        Record(
            "constraint_residual",
            history.constraint_residual(),
            inputs,
            expected=0.0,
            tolerance=1e-10 if args.tolerance is None else tol,
        ),
        Record(
            "schrodinger_residual",
            schrodinger_residual(history),
            inputs,
            expected=0.0,
            tolerance=tol,
        ),
    ]
    for k, fidelity in enumerate(relational_fidelities(history)):
        records.append(
            Record(f"relational_fidelity[k={k}]", fidelity, inputs, expected=1.0, tolerance=tol)
        )
    if args.observable:
        diag = [float(x) for x in args.observable.split(",")]
        if len(diag) != ds:
            raise StateFileError(
                f"observable has {len(diag)} entries for a {ds}-level system"
            )
    else:
        diag = list(range(ds))
    observable = HermitianOperator.from_diagonal(diag)
    outcomes = sorted(set(diag))
    for k in range(d):
        for index, value in enumerate(outcomes):
            p = conditional_probability(history, observable, index, k)
            records.append(Record(f"p(o={value:g}|k={k})", p, inputs))
    _emit(format_records(records, args.format), args.output)
    return _exit_code(records)


def cmd_twirl(args) -> int:
    loaded = statefile.load(args.file)
    charges = _loaded_total(loaded)
    if args.method == "dephase":
        result = dephase(loaded.state, sectors(charges))
    elif args.method == "quadrature":
        n = args.samples if args.samples else charges.span + 1
        result = twirl_quadrature(loaded.state, charges, n)
    else:
        result = twirl_design(loaded.state, charges, finite_design(charges))
    _emit(statefile.dumps(result, loaded.charges_s, loaded.charges_r), args.output)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(sub, tolerance_help="override the golden tolerance"):
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--output", metavar="PATH", help="write the result to PATH")
    sub.add_argument("--tolerance", type=float, help=tolerance_help)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qrfasym",
        description="Asymmetry quantifiers for bipartite quantum reference frames "
        "and finite clock models (all entropies in bits).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("example", help="run a worked example against its closed forms")
    p.add_argument("name", choices=EXAMPLE_NAMES)
    p.add_argument("--d", type=int, default=150, help="clock dimension (default 150)")
    _add_common(p)
    p.set_defaults(func=cmd_example)

    p = sub.add_parser(
        "symmetric-state",
        help="emit the globally dephased joint state and verify its closed form",
    )
    p.add_argument("name", choices=EXAMPLE_NAMES)
    p.add_argument("--d", type=int, default=8, help="clock dimension (default 8)")
    _add_common(p)
    p.set_defaults(func=cmd_symmetric_state)

    p = sub.add_parser("measure", help="compute a measure on a state file")
    p.add_argument("file")
    p.add_argument(
        "--which",
        choices=("asymmetry", "mutual", "relent", "interaction"),
        default="asymmetry",
    )
    p.add_argument("--marginal-s", metavar="PATH", help="system marginal state file")
    p.add_argument("--marginal-r", metavar="PATH", help="reference marginal state file")
    p.add_argument(
        "--product",
        action="store_true",
        help="declare the joint file to be a product state",
    )
    _add_common(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("figure-data", help="emit angle-space wave functions as CSV")
    p.add_argument("--which", choices=("localization", "coherence-order"), required=True)
    p.add_argument("--d", type=int, default=150, help="clock dimension (default 150)")
    p.add_argument("--samples", type=int, default=2048, help="angle grid size (default 2048)")
    _add_common(p)
    p.set_defaults(func=cmd_figure_data)

    p = sub.add_parser("pwc-demo", help="relational clock dynamics demo")
    p.add_argument("--d", type=int, default=8, help="clock dimension (default 8)")
    p.add_argument("--hs", default="0,1", help="system charges, comma separated")
    p.add_argument(
        "--observable",
        help="diagonal observable entries on the system, comma separated",
    )
    p.add_argument(
        "--corrupt",
        action="store_true",
        help="corrupt one tick as a negative control",
    )
    _add_common(p)
    p.set_defaults(func=cmd_pwc_demo)

    p = sub.add_parser("twirl", help="apply a group average to a state file")
    p.add_argument("file")
    p.add_argument("--method", choices=("dephase", "quadrature", "design"), default="dephase")
    p.add_argument("--samples", type=int, help="quadrature point count (default span + 1)")
    _add_common(p)
    p.set_defaults(func=cmd_twirl)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (StateFileError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
