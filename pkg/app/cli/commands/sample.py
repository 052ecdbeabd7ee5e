from app.cli.common import load_config, out_dir, threads
from app.core.logger import get_logger
from app.schemas.sampler_schemas import SampleRequest
from app.services.potentials import potential_service
from app.services.samplers import sampler_runner
from app.utils.csv_generator import csv_generator
from app.utils.manifest import ManifestWriter

logger = get_logger(__name__)


def register(subparsers, common) -> None:
    parser = subparsers.add_parser("sample", parents=[common], help="run n chains, write final states as CSV")
    parser.set_defaults(func=cmd_sample)


def cmd_sample(args) -> int:
    manifest = ManifestWriter()
    request = load_config(args, SampleRequest)
    if args.seed is not None:
        request.sampler = request.sampler.model_copy(update={"seed": args.seed})

    potential = potential_service.build_potential(request.target)
    trajectories = sampler_runner.run_chains(request.sampler, potential, request.n_chains, threads(args))
    states = sampler_runner.final_states(trajectories)

    target = out_dir(args)
    path = target / "samples.csv"
    path.write_text(csv_generator.generate_cloud_csv(states), encoding="utf-8")
    draws = sum(t.rng_draw_count for t in trajectories)
    config = request.model_dump(mode="json")
    config["rng_draws"] = draws
    manifest.write(target, config, request.sampler.seed, [path])
    logger.info(f"{request.n_chains} final states written to {path} ({draws} normal draws)")
    print(path)
    return 0
