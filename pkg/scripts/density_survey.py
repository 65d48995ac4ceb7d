"""Fraction of fields Q(sqrt(d)), p split, in which p is very regular, at growing |d| bounds."""

import argparse
import json
import logging
import time

from vrprimes.survey import density_prediction, scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--bounds", type=int, nargs="+", default=[1000, 10000, 100000, 300000])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO)

    rows = []
    for dmax in args.bounds:
        t0 = time.perf_counter()
        r = scan(args.p, dmax, jobs=args.jobs, keep_records=False)
        rows.append({**r.to_dict(), "seconds": round(time.perf_counter() - t0, 2)})
    limit = density_prediction(args.p)
    if args.json:
        print(json.dumps({"rows": rows, "prediction": limit}))
        return
    print(f"{'|d| <':>8} {'split':>7} {'v.reg':>7} {'%':>6} {'sec':>7}")
    for row in rows:
        print(f"{row['dmax']:>8} {row['split_count']:>7} {row['vr_count']:>7} {row['percentage']:>6} {row['seconds']:>7}")
    print(f"Cohen-Lenstra prediction: {100 * limit:.4f}%")


if __name__ == "__main__":
    main()
