from app.cli.common import dump_json, load_config
from app.schemas.moment_schemas import MomentRequest
from app.services.moments import moment_bound_calculator


def register(subparsers, common) -> None:
    parser = subparsers.add_parser("moments", parents=[common], help="moment upper bound for a convexity regime")
    parser.set_defaults(func=cmd_moments)


def cmd_moments(args) -> int:
    request = load_config(args, MomentRequest)
    report = moment_bound_calculator.report(request.regime, request.p, request.m, request.a, request.R, request.M)
    print(dump_json(report.model_dump(mode="json")))
    return 0
