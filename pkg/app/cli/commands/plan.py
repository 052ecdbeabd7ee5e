from app.cli.common import dump_json, load_config, out_dir, write_json
from app.schemas.plan_schemas import PlanRequest
from app.services.planner import planner
from app.utils.manifest import ManifestWriter


def register(subparsers, common) -> None:
    parser = subparsers.add_parser("plan", parents=[common], help="tune (alpha, h, gamma, K) for an algorithm")
    parser.set_defaults(func=cmd_plan)


def cmd_plan(args) -> int:
    manifest = ManifestWriter()
    request = load_config(args, PlanRequest)
    plan = planner.plan(request.alg, request)
    payload = plan.model_dump(mode="json")

    target = out_dir(args)
    path = write_json(target / "plan.json", payload)
    manifest.write(target, request.model_dump(mode="json", by_alias=True), 0, [path])
    print(dump_json(payload))
    return 0
