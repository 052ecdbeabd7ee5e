from app.cli.common import dump_json, load_config
from app.schemas.plan_schemas import BoundRequest
from app.services.planner import bound_evaluator


def register(subparsers, common) -> None:
    parser = subparsers.add_parser("bounds", parents=[common], help="evaluate a theorem bound at given parameters")
    parser.set_defaults(func=cmd_bounds)


def cmd_bounds(args) -> int:
    request = load_config(args, BoundRequest)
    evaluation = bound_evaluator.evaluate(request.alg, request, request.alpha, request.h, request.K, request.gamma)
    print(dump_json(evaluation.model_dump(mode="json")))
    return 0
