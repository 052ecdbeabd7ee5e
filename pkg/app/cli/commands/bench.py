from app.cli.common import dump_json, load_config, out_dir, threads, write_json
from app.schemas.metric_schemas import BenchRequest
from app.services.bench import bench_runner
from app.utils.csv_generator import csv_generator
from app.utils.manifest import ManifestWriter


def register(subparsers, common) -> None:
    parser = subparsers.add_parser("bench", parents=[common], help="plan, run and check a Gaussian target end to end")
    parser.set_defaults(func=cmd_bench)


def cmd_bench(args) -> int:
    manifest = ManifestWriter()
    request = load_config(args, BenchRequest)
    if args.seed is not None:
        request = request.model_copy(update={"seed": args.seed})

    report, states = bench_runner.run(request, threads(args))

    target = out_dir(args)
    report_path = write_json(target / "report.json", report.model_dump(mode="json"))
    samples_path = target / "samples.csv"
    samples_path.write_text(csv_generator.generate_cloud_csv(states), encoding="utf-8")
    manifest.write(target, request.model_dump(mode="json"), request.seed, [report_path, samples_path])
    print(dump_json(report.model_dump(mode="json")))
    return 0
