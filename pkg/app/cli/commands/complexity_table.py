from app.cli.common import out_dir
from app.core.errors import InvalidArgumentError
from app.services.planner import complexity_calculator
from app.utils.csv_generator import csv_generator
from app.utils.manifest import ManifestWriter

HEADERS = ["algorithm", "conditions", "metric", "value"]


def register(subparsers, common) -> None:
    parser = subparsers.add_parser(
        "complexity-table", parents=[common], help="order-of-magnitude iteration counts per algorithm and metric"
    )
    parser.add_argument("--kappa", type=float, required=True)
    parser.add_argument("--kappa2", type=float, required=True)
    parser.add_argument("--p", type=int, required=True)
    parser.add_argument("--eps", type=float, required=True)
    parser.add_argument("--beta", type=float, default=1.0)
    parser.set_defaults(func=cmd_complexity_table)


def cmd_complexity_table(args) -> int:
    manifest = ManifestWriter()
    if args.kappa <= 0 or args.kappa2 < 0 or args.p < 1 or not 0 < args.eps < 1 or args.beta <= 0:
        raise InvalidArgumentError(
            f"need kappa > 0, kappa2 >= 0, p >= 1, 0 < eps < 1 and beta > 0, "
            f"got kappa={args.kappa}, kappa2={args.kappa2}, p={args.p}, eps={args.eps}, beta={args.beta}"
        )
    rows = complexity_calculator.complexity_table(args.kappa, args.kappa2, args.p, args.eps, args.beta)
    content = csv_generator.generate_table_csv(
        HEADERS, [(row.algorithm.value, row.conditions, row.metric.value, row.value) for row in rows]
    )

    target = out_dir(args)
    path = target / "complexity_table.csv"
    path.write_text(content, encoding="utf-8")
    config = {"kappa": args.kappa, "kappa2": args.kappa2, "p": args.p, "eps": args.eps, "beta": args.beta}
    manifest.write(target, config, 0, [path])
    print(content, end="")
    return 0
