from pathlib import Path

from app.cli.common import dump_json
from app.core.errors import InvalidArgumentError
from app.schemas.metric_schemas import MeasureReport
from app.services.metrics import wasserstein_calculator
from app.utils.csv_generator import csv_generator


def register(subparsers, common) -> None:
    parser = subparsers.add_parser("measure", parents=[common], help="exact W1 and W2 between two sample CSV files")
    parser.add_argument("first", type=Path)
    parser.add_argument("second", type=Path)
    parser.set_defaults(func=cmd_measure)


def cmd_measure(args) -> int:
    a = csv_generator.read_cloud_csv(args.first)
    b = csv_generator.read_cloud_csv(args.second)
    if a.p != b.p:
        raise InvalidArgumentError(f"dimensions differ: {args.first} has p={a.p}, {args.second} has p={b.p}")

    if a.p == 1:
        w1 = wasserstein_calculator.wasserstein_1d(a.points[:, 0], b.points[:, 0], q=1)
        w2 = wasserstein_calculator.wasserstein_1d(a.points[:, 0], b.points[:, 0], q=2)
    else:
        w1 = wasserstein_calculator.wasserstein_empirical(a, b, q=1)
        w2 = wasserstein_calculator.wasserstein_empirical(a, b, q=2)
    report = MeasureReport(w1=w1, w2=w2, n=a.n, p=a.p)
    print(dump_json(report.model_dump(mode="json")))
    return 0
