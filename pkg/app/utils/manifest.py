import hashlib
import json
import time
from pathlib import Path
from typing import Any, Dict, Iterable, Union

from app.core.config import settings
from app.core.logger import get_logger
from app.schemas.sampler_schemas import RunManifest

logger = get_logger(__name__)

MANIFEST_NAME = "manifest.json"


def file_digest(path: Union[str, Path]) -> str:
    digest = hashlib.sha256()
    with Path(path).open("rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


class ManifestWriter:
    """
    Manifeste de reproductibilité : configuration, graine, version,
    durée et empreintes SHA-256 des fichiers produits
    """

    def __init__(self):
        self._started = time.perf_counter()

    def build(self, config: Dict[str, Any], seed: int, outputs: Iterable[Path]) -> RunManifest:
        return RunManifest(
            config=config,
            seed=seed,
            version=settings.VERSION,
            wall_time_seconds=time.perf_counter() - self._started,
            outputs={Path(path).name: file_digest(path) for path in outputs},
        )

    def write(self, out_dir: Union[str, Path], config: Dict[str, Any], seed: int, outputs: Iterable[Path]) -> Path:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        manifest = self.build(config, seed, outputs)
        path = out_dir / MANIFEST_NAME
        path.write_text(json.dumps(manifest.model_dump(mode="json"), indent=2), encoding="utf-8")
        logger.info("Manifest written to %s (%d outputs)", path, len(manifest.outputs))
        return path
