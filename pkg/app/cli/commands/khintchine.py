from app.cli.common import dump_json
from app.services.moments import khintchine_optimizer


def register(subparsers, common) -> None:
    parser = subparsers.add_parser("khintchine", parents=[common], help="moment comparison constant A_k")
    parser.add_argument("--k", type=float, required=True)
    parser.set_defaults(func=cmd_khintchine)


def cmd_khintchine(args) -> int:
    result = khintchine_optimizer.khintchine_constant(args.k)
    print(dump_json(result.model_dump(mode="json")))
    return 0
