"""Command-line front end: single census, range sweeps, identity
verification and machine-readable emission (json / csv / markdown).

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import formulas as cf
from . import quadratic, verify
from .arith import PrimeInput, iroot, is_prime
from .formulas import CensusReport, GaussGenus, GroupTag, RefinedTable
from .errors import VerificationFailure

_REFINED_PP_TAGS = (cf.C2, cf.C4, cf.C6, cf.Q8, cf.Q12, cf.Q24,
                    cf.E24, cf.E48, cf.E120)
_ELLIPTIC_TAGS = (cf.C2, cf.C4, cf.C6, cf.E24, cf.Q12)
_POLMOD_KEYS = (
    (1, GaussGenus.UNIQUE), (1, GaussGenus.PRINCIPAL),
    (1, GaussGenus.NONPRINCIPAL), (8, GaussGenus.UNIQUE),
    (16, GaussGenus.UNIQUE),
)
_MASS_KEYS = ("pm_1", "pm_8", "pm_16", "un_1", "un_8", "un_16", "ppsp")

_CSV_COMMENT = """\
# one row per prime p: class data of Q(sqrt(p)) followed by the census of
# polarized superspecial abelian surface classes for the Weil numbers
# +-sqrt(p); exact rationals are written num/den, empty cells mean the
# quantity does not exist for that residue class of p.
# h/h_plus: (narrow) class number of Q(sqrt(p)); varpi: unit index of
# Z[sqrt(p)]; h_A: class number of Z[sqrt(p)]; zeta_minus1: zeta_F(-1).
# h_pp/t_pp: class and type number of the principally polarized census;
# refined_G: classes with automorphism group G; lambda{1,16}_pp: stratum
# sizes; polmod_*: per-stratum (h_pm, h_un, t); mass_*: exact masses;
# elliptic_*: the even-power (supersingular elliptic curve) baseline.
"""


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _parse_frac(s: str) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def _polmod_key_str(r: int, genus: GaussGenus) -> str:
    return f"r{r}_{genus.value}"


def report_to_dict(report: CensusReport) -> dict:
    """Flatten a CensusReport into JSON-ready primitives with stable keys."""
    prof = report.profile
    out: dict = {
        "p": report.p.p,
        "d_F": prof.d_F,
        "h": prof.h,
        "h_plus": prof.h_plus,
        "unit": {
            "t": prof.unit.t,
            "u": prof.unit.u,
            "half": prof.unit.half,
            "norm": prof.unit.norm,
        },
        "varpi": prof.varpi,
        "h_A": prof.h_A,
        "zeta_minus1": _frac_str(prof.zeta_minus1),
        "h_pp": report.h_pp,
        "t_pp": report.t_pp,
        "refined_pp": {tag.label: n for tag, n in report.refined_pp.items()},
        "lambda1_pp": report.lambda1_pp,
        "lambda16_pp": report.lambda16_pp,
        "pol_mod": {
            _polmod_key_str(r, genus): {
                "h_pm": triple.h_pm, "h_un": triple.h_un, "t": triple.t,
            }
            for (r, genus) in _POLMOD_KEYS
            if (r, genus) in report.pol_mod
            for triple in [report.pol_mod[(r, genus)]]
        },
        "masses": {
            key: _frac_str(report.masses[key])
            for key in _MASS_KEYS if key in report.masses
        },
        "elliptic": {
            "h": report.elliptic.h,
            "t": report.elliptic.t,
            "refined": {
                tag.label: n for tag, n in report.elliptic.refined.items()
            },
        },
    }
    return out


def report_from_dict(data: dict) -> CensusReport:
    """Inverse of :func:`report_to_dict` (used for round-trip checks)."""
    p = data["p"]
    unit = quadratic.QuadraticUnit(
        data["unit"]["t"], data["unit"]["u"],
        data["unit"]["half"], data["unit"]["norm"],
    )
    profile = quadratic.RealQuadraticProfile(
        p=PrimeInput.from_int(p),
        d_F=data["d_F"],
        unit=unit,
        h=data["h"],
        h_plus=data["h_plus"],
        varpi=data["varpi"],
        h_A=data["h_A"],
        zeta_minus1=_parse_frac(data["zeta_minus1"]),
    )
    pol_mod = {}
    for key, triple in data["pol_mod"].items():
        r_str, genus_str = key.split("_", 1)
        pol_mod[(int(r_str[1:]), GaussGenus(genus_str))] = cf.PolModTriple(
            triple["h_pm"], triple["h_un"], triple["t"]
        )
    return CensusReport(
        p=profile.p,
        profile=profile,
        h_pp=data["h_pp"],
        t_pp=data["t_pp"],
        refined_pp=RefinedTable(
            {_tag_from_label(lbl): n for lbl, n in data["refined_pp"].items()}
        ),
        lambda1_pp=data["lambda1_pp"],
        lambda16_pp=data["lambda16_pp"],
        pol_mod=pol_mod,
        masses={k: _parse_frac(v) for k, v in data["masses"].items()},
        elliptic=cf.EllipticBaseline(
            data["elliptic"]["h"],
            data["elliptic"]["t"],
            RefinedTable({
                _tag_from_label(lbl): n
                for lbl, n in data["elliptic"]["refined"].items()
            }),
        ),
    )


def _tag_from_label(label: str) -> GroupTag:
    name = label.rstrip("†‡")
    decoration = ""
    if label.endswith("†"):
        decoration = "dagger"
    elif label.endswith("‡"):
        decoration = "ddagger"
    return GroupTag(name, decoration)


def surface_record(p: int, q: int | None = None, n: int = 1,
                   diagnostics: bool = False) -> dict:
    """Census record for the odd-power Weil numbers ±sqrt(p^n)."""
    record: dict = {"q": q if q is not None else p, "n": n, "kind": "surface"}
    if n > 1:
        record["note"] = f"PPSP(√{q}) ≅ PPAV(√{p})"
    record.update(report_to_dict(cf.census(p)))
    if diagnostics and p % 4 == 1 and p >= 13:
        record["t_pp_variant"] = _frac_str(cf.ppav_type_number_variant(p))
    return record


def elliptic_record(p: int, q: int, n: int) -> dict:
    """Census record for the even-power Weil numbers ±p^(n/2)."""
    ell = cf.elliptic_baseline(p)
    return {
        "q": q, "n": n, "kind": "elliptic", "p": p,
        "h": ell.h, "t": ell.t,
        "refined": {tag.label: cnt for tag, cnt in ell.refined.items()},
    }


def prime_power_split(q: int) -> tuple[int, int] | None:
    """(p, n) with q = p^n and p prime, or None."""
    if q < 2:
        return None
    for n in range(1, q.bit_length() + 1):
        p = iroot(q, n)
        if p ** n == q and is_prime(p):
            return p, n
    return None


# ---------------------------------------------------------------- rendering

_CSV_COLUMNS = (
    ["p", "d_F", "h", "h_plus", "unit_t", "unit_u", "unit_half", "unit_norm",
     "varpi", "h_A", "zeta_minus1", "h_pp", "t_pp"]
    + [f"refined_{tag.label}" for tag in _REFINED_PP_TAGS]
    + ["lambda1_pp", "lambda16_pp"]
    + [
        f"polmod_{_polmod_key_str(r, genus)}_{field}"
        for (r, genus) in _POLMOD_KEYS
        for field in ("h_pm", "h_un", "t")
    ]
    + [f"mass_{key}" for key in _MASS_KEYS]
    + ["elliptic_h", "elliptic_t"]
    + [f"elliptic_{tag.label}" for tag in _ELLIPTIC_TAGS]
)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    return str(value)


def surface_csv_row(record: dict) -> list[str]:
    row = []
    for col in _CSV_COLUMNS:
        if col in ("p", "d_F", "h", "h_plus", "varpi", "h_A", "zeta_minus1",
                   "h_pp", "t_pp", "lambda1_pp", "lambda16_pp"):
            row.append(_csv_cell(record[col]))
        elif col.startswith("unit_"):
            row.append(_csv_cell(record["unit"][col[len("unit_"):]]))
        elif col.startswith("refined_"):
            row.append(_csv_cell(record["refined_pp"].get(col[len("refined_"):], 0)))
        elif col.startswith("polmod_"):
            base, field = col[len("polmod_"):].rsplit("_", 1)
            if field in ("pm", "un"):  # h_pm / h_un carry an underscore
                base, extra = base.rsplit("_", 1)
                field = f"{extra}_{field}"
            triple = record["pol_mod"].get(base)
            row.append(_csv_cell(triple[field] if triple else None))
        elif col.startswith("mass_"):
            row.append(_csv_cell(record["masses"].get(col[len("mass_"):])))
        elif col in ("elliptic_h", "elliptic_t"):
            row.append(_csv_cell(record["elliptic"][col[len("elliptic_"):]]))
        else:  # elliptic refined columns
            tag = col[len("elliptic_"):]
            row.append(_csv_cell(record["elliptic"]["refined"].get(tag, 0)))
    return row


def render_surface_csv(records: list[dict]) -> str:
    lines = [_CSV_COMMENT.rstrip("\n"), ",".join(_CSV_COLUMNS)]
    for record in records:
        lines.append(",".join(surface_csv_row(record)))
    return "\n".join(lines) + "\n"


def parse_surface_csv(text: str) -> list[dict]:
    """Rebuild record dicts from render_surface_csv output."""
    rows = [line for line in text.splitlines() if line and not line.startswith("#")]
    header = rows[0].split(",")
    records = []
    for line in rows[1:]:
        cells = dict(zip(header, line.split(",")))

        def get(col, conv=int):
            return conv(cells[col]) if cells[col] != "" else None

        record: dict = {
            "q": get("p"), "n": 1, "kind": "surface",
            "p": get("p"), "d_F": get("d_F"), "h": get("h"),
            "h_plus": get("h_plus"),
            "unit": {
                "t": get("unit_t"), "u": get("unit_u"),
                "half": bool(int(cells["unit_half"])),
                "norm": get("unit_norm"),
            },
            "varpi": get("varpi"), "h_A": get("h_A"),
            "zeta_minus1": cells["zeta_minus1"],
            "h_pp": get("h_pp"), "t_pp": get("t_pp"),
            "refined_pp": {
                tag.label: int(cells[f"refined_{tag.label}"])
                for tag in _REFINED_PP_TAGS
                if int(cells[f"refined_{tag.label}"])
            },
            "lambda1_pp": get("lambda1_pp"),
            "lambda16_pp": get("lambda16_pp"),
            "pol_mod": {},
            "masses": {
                key: cells[f"mass_{key}"]
                for key in _MASS_KEYS if cells[f"mass_{key}"] != ""
            },
            "elliptic": {
                "h": get("elliptic_h"), "t": get("elliptic_t"),
                "refined": {
                    tag.label: int(cells[f"elliptic_{tag.label}"])
                    for tag in _ELLIPTIC_TAGS
                    if int(cells[f"elliptic_{tag.label}"])
                },
            },
        }
        for r, genus in _POLMOD_KEYS:
            key = _polmod_key_str(r, genus)
            if cells[f"polmod_{key}_t"] != "":
                record["pol_mod"][key] = {
                    "h_pm": int(cells[f"polmod_{key}_h_pm"]),
                    "h_un": int(cells[f"polmod_{key}_h_un"]),
                    "t": int(cells[f"polmod_{key}_t"]),
                }
        records.append(record)
    return records


def render_markdown(records: list[dict]) -> str:
    header = ("| p | d_F | h | h+ | varpi | h_A | zeta_F(-1) | h_pp | t_pp "
              "| refined | mass |")
    rule = "|---|-----|---|----|-------|-----|------------|------|------|---------|------|"
    lines = [header, rule]
    for rec in records:
        refined = " ".join(
            f"{lbl}:{n}" for lbl, n in rec["refined_pp"].items() if n
        )
        lines.append(
            f"| {rec['p']} | {rec['d_F']} | {rec['h']} | {rec['h_plus']} "
            f"| {rec['varpi'] if rec['varpi'] is not None else ''} "
            f"| {rec['h_A'] if rec['h_A'] is not None else ''} "
            f"| {rec['zeta_minus1']} | {rec['h_pp']} | {rec['t_pp']} "
            f"| {refined} | {rec['masses']['ppsp']} |"
        )
    return "\n".join(lines) + "\n"


def render_records(records: list[dict], fmt: str, single: bool = False) -> str:
    if fmt == "json":
        payload = records[0] if single and records else records
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        if records and records[0]["kind"] == "elliptic":
            cols = ["q", "n", "kind", "p", "h", "t"] + [
                f"refined_{tag.label}" for tag in _ELLIPTIC_TAGS
            ]
            lines = [",".join(cols)]
            for rec in records:
                lines.append(",".join(
                    [str(rec[c]) for c in ("q", "n", "kind", "p", "h", "t")]
                    + [str(rec["refined"].get(tag.label, 0))
                       for tag in _ELLIPTIC_TAGS]
                ))
            return "\n".join(lines) + "\n"
        return render_surface_csv(records)
    if fmt == "markdown":
        if records and records[0]["kind"] == "elliptic":
            rec = records[0]
            refined = " ".join(f"{k}:{v}" for k, v in rec["refined"].items())
            return (
                "| q | p | h | t | refined |\n|---|---|---|---|---------|\n"
                f"| {rec['q']} | {rec['p']} | {rec['h']} | {rec['t']} "
                f"| {refined} |\n"
            )
        return render_markdown(records)
    raise ValueError(f"unknown format {fmt!r}")


# ------------------------------------------------------------------ commands

def _worker_record(p: int) -> dict:
    return surface_record(p)


def cmd_census(args) -> int:
    split = prime_power_split(args.q)
    if split is None:
        print(f"error: {args.q} is not a prime power", file=sys.stderr)
        return 2
    p, n = split
    if n % 2:
        record = surface_record(p, q=args.q, n=n, diagnostics=args.diagnostics)
    else:
        record = elliptic_record(p, args.q, n)
    sys.stdout.write(render_records([record], args.format, single=True))
    return 0


def cmd_range(args) -> int:
    if not (2 <= args.p_min <= args.p_max):
        print("error: need 2 <= pmin <= pmax", file=sys.stderr)
        return 2
    primes = [p for p in range(args.p_min, args.p_max + 1) if is_prime(p)]
    jobs = _job_count(args)
    if jobs > 1 and len(primes) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_worker_record, primes))
    else:
        records = [surface_record(p) for p in primes]
    sys.stdout.write(render_records(records, args.format))
    return 0


def cmd_verify(args) -> int:
    if args.p_max < 2:
        print("error: need pmax >= 2", file=sys.stderr)
        return 2
    jobs = _job_count(args)
    try:
        counts = verify.imaginary_sweep()
        counts += verify.unit_minimality_sweep(min(args.p_max + 1, 200))
        primes = [p for p in range(2, args.p_max + 1) if is_prime(p)]
        if jobs > 1 and len(primes) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for partial in pool.map(verify.check_prime, primes):
                    counts += partial
        else:
            for p in primes:
                counts += verify.check_prime(p)
    except VerificationFailure as exc:
        print(f"FAIL p={exc.p} identity={exc.identity}"
              + (f": {exc.detail}" if exc.detail else ""))
        return 1
    print(f"checked {len(primes)} primes in [2, {args.p_max}]")
    for name in sorted(counts):
        print(f"  {name:32s} {counts[name]}")
    print("all identities passed")
    return 0


def cmd_zeta(args) -> int:
    if not is_prime(args.p):
        print(f"error: {args.p} is not prime", file=sys.stderr)
        return 2
    disc = quadratic.fundamental_discriminant(args.p)
    by_div = quadratic._zeta_by_divisor_sums(disc)
    by_chr = quadratic._zeta_by_character_sum(disc)
    print(f"p = {args.p}  d_F = {disc}")
    print(f"  divisor-sum route:    {_frac_str(by_div)}")
    print(f"  character-sum route:  {_frac_str(by_chr)}")
    if by_div != by_chr:
        print("MISMATCH")
        return 1
    return 0


def _job_count(args) -> int:
    if getattr(args, "jobs", None):
        return max(1, args.jobs)
    env = os.environ.get("CENSUS_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spcensus",
        description=(
            "Exact census of polarized superspecial abelian surface classes "
            "for the Weil numbers ±√q."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_census = sub.add_parser("census", help="census for one prime power q")
    p_census.add_argument("q", type=int)
    p_census.add_argument("--format", choices=("json", "csv", "markdown"),
                          default="json")
    p_census.add_argument("--diagnostics", action="store_true",
                          help="include the alternative type-number value")
    p_census.set_defaults(func=cmd_census)

    p_range = sub.add_parser("range", help="census for every prime in a range")
    p_range.add_argument("p_min", type=int)
    p_range.add_argument("p_max", type=int)
    p_range.add_argument("--format", choices=("json", "csv", "markdown"),
                         default="json")
    p_range.add_argument("--jobs", type=int, default=0)
    p_range.set_defaults(func=cmd_range)

    p_verify = sub.add_parser("verify", help="run the identity suite")
    p_verify.add_argument("p_max", type=int)
    p_verify.add_argument("--jobs", type=int, default=0)
    p_verify.set_defaults(func=cmd_verify)

    p_zeta = sub.add_parser("zeta", help="print both zeta_F(-1) evaluations")
    p_zeta.add_argument("p", type=int)
    p_zeta.set_defaults(func=cmd_zeta)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    return args.func(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
