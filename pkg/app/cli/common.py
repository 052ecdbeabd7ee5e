import json
from pathlib import Path
from typing import Any, Type, TypeVar

from pydantic import BaseModel

from app.core.config import settings
from app.core.errors import ConfigError

ModelT = TypeVar("ModelT", bound=BaseModel)


def add_common_arguments(parser) -> None:
    """Options partagées par toutes les sous-commandes"""
    parser.add_argument("--config", type=Path, help="JSON configuration file")
    parser.add_argument("--seed", type=int, help="override the configured seed")
    parser.add_argument("--threads", type=int, help="worker pool size")
    parser.add_argument("--out", type=Path, help="output directory")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ...")


def load_config(args, model: Type[ModelT]) -> ModelT:
    """
    Lit et valide le fichier --config

    Raises:
        ConfigError: fichier absent ou JSON invalide
        ValidationError: contenu non conforme au schema
    """
    if args.config is None:
        raise ConfigError(f"{args.command}: --config is required")
    try:
        payload = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {args.config}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{args.config}: invalid JSON ({exc})")
    if not isinstance(payload, dict):
        raise ConfigError(f"{args.config}: expected a JSON object")
    return model.model_validate(payload)


def out_dir(args) -> Path:
    path = Path(args.out) if args.out is not None else Path(settings.OUT_DIR)
    path.mkdir(parents=True, exist_ok=True)
    return path


def threads(args) -> int:
    return args.threads if args.threads else settings.THREADS


def dump_json(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=False)


def write_json(path: Path, data: Any) -> Path:
    path.write_text(dump_json(data) + "\n", encoding="utf-8")
    return path
