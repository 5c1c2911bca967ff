#!/usr/bin/env python3
"""Rebuild tests/fixtures/heart_statlog.arff from the UCI primary source.

The Statlog (Heart) data set (270 instances, 13 attributes + class) is
distributed by the UCI Machine Learning Repository under CC BY 4.0:

    https://archive.ics.uci.edu/dataset/145/statlog+heart

This script downloads the space-separated heart.dat, converts it to the ARFF
layout the test suite expects (13 numeric attributes, nominal class
{absent, present}) and writes it to tests/fixtures/heart_statlog.arff. It
needs network access and runs outside the test suite; the produced fixture is
vendored so the tests themselves stay offline.

Usage:
    python3 scripts/fetch_statlog_heart.py            # download from UCI
    python3 scripts/fetch_statlog_heart.py --from-file heart.dat
"""

import argparse
import io
import pathlib
import sys
import urllib.request
import zipfile

UCI_ZIP_URL = "https://archive.ics.uci.edu/static/public/145/statlog+heart.zip"

ATTRIBUTES = [
    "age",
    "sex",
    "chest",
    "resting_blood_pressure",
    "serum_cholestoral",
    "fasting_blood_sugar",
    "resting_electrocardiographic_results",
    "maximum_heart_rate_achieved",
    "exercise_induced_angina",
    "oldpeak",
    "slope",
    "number_of_major_vessels",
    "thal",
]

CLASS_NAMES = {1: "absent", 2: "present"}


def fetch_heart_dat() -> str:
    with urllib.request.urlopen(UCI_ZIP_URL) as resp:
        payload = resp.read()
    with zipfile.ZipFile(io.BytesIO(payload)) as zf:
        for name in zf.namelist():
            if name.endswith("heart.dat"):
                return zf.read(name).decode("ascii")
    raise SystemExit("heart.dat not found inside the UCI archive")


def format_number(text: str) -> str:
    value = float(text)
    return str(int(value)) if value == int(value) else repr(value)


def convert(dat_text: str) -> str:
    lines = [line.split() for line in dat_text.splitlines() if line.strip()]
    if len(lines) != 270:
        raise SystemExit(f"expected 270 instances, got {len(lines)}")

    out = ["% Statlog (Heart) data set, UCI Machine Learning Repository"]
    out.append("% (https://archive.ics.uci.edu/dataset/145/statlog+heart), CC BY 4.0.")
    out.append("% Converted from heart.dat by scripts/fetch_statlog_heart.py.")
    out.append("@relation heart-statlog")
    for name in ATTRIBUTES:
        out.append(f"@attribute {name} real")
    out.append("@attribute class { absent, present}")
    out.append("@data")
    for fields in lines:
        if len(fields) != 14:
            raise SystemExit(f"malformed row: {' '.join(fields)}")
        values = [format_number(v) for v in fields[:-1]]
        values.append(CLASS_NAMES[int(float(fields[-1]))])
        out.append(",".join(values))
    return "\n".join(out) + "\n"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--from-file", help="use a local heart.dat instead of downloading")
    parser.add_argument(
        "--out",
        default=str(pathlib.Path(__file__).resolve().parent.parent
                    / "tests" / "fixtures" / "heart_statlog.arff"),
        help="output ARFF path",
    )
    args = parser.parse_args()

    if args.from_file:
        dat_text = pathlib.Path(args.from_file).read_text()
    else:
        dat_text = fetch_heart_dat()

    arff = convert(dat_text)
    pathlib.Path(args.out).write_text(arff)
    print(f"wrote {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
