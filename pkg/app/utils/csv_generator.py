import csv
import io
from pathlib import Path
from typing import Iterable, List, Sequence, Union

import numpy as np

from app.core.errors import InvalidArgumentError
from app.services.metrics import SampleCloud


class CSVGenerator:
    """
    Écrit et relit les nuages de points au format long chain,coord,value.
    Les flottants sont écrits avec repr() pour un aller-retour exact.
    """

    HEADERS = ["chain", "coord", "value"]

    def generate_cloud_csv(self, points: np.ndarray, chain_ids: Sequence[int] = None) -> str:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if chain_ids is None:
            chain_ids = range(points.shape[0])

        output = io.StringIO()
        writer = csv.writer(output, lineterminator="\n")
        writer.writerow(self.HEADERS)
        for chain_id, row in zip(chain_ids, points):
            for coord, value in enumerate(row):
                writer.writerow([int(chain_id), coord, repr(float(value))])

        csv_content = output.getvalue()
        output.close()
        return csv_content

    def generate_table_csv(self, headers: List[str], rows: Iterable[Sequence]) -> str:
        output = io.StringIO()
        writer = csv.writer(output, lineterminator="\n")
        writer.writerow(headers)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
        csv_content = output.getvalue()
        output.close()
        return csv_content

    def write_cloud_csv(self, path: Union[str, Path], cloud: SampleCloud) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.generate_cloud_csv(cloud.points), encoding="utf-8")
        return path

    def read_cloud_csv(self, path: Union[str, Path]) -> SampleCloud:
        """
        Relit un fichier chain,coord,value

        Raises:
            InvalidArgumentError: fichier illisible, en-tête inattendu,
                coordonnées manquantes ou dupliquées
        """
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise InvalidArgumentError(f"{path}: cannot read samples ({exc.__class__.__name__}: {exc})") from exc

        reader = csv.reader(io.StringIO(text, newline=""))
        header = next(reader, None)
        if header != self.HEADERS:
            raise InvalidArgumentError(f"{path}: expected header {','.join(self.HEADERS)}, got {header}")
        entries = {}
        for line_number, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                chain, coord, value = int(row[0]), int(row[1]), float(row[2])
            except (ValueError, IndexError) as exc:
                raise InvalidArgumentError(f"{path}:{line_number}: malformed row {row}") from exc
            if (chain, coord) in entries:
                raise InvalidArgumentError(f"{path}:{line_number}: duplicate entry chain={chain} coord={coord}")
            entries[(chain, coord)] = value

        if not entries:
            raise InvalidArgumentError(f"{path}: no samples")
        chains = sorted({chain for chain, _ in entries})
        p = max(coord for _, coord in entries) + 1
        if len(entries) != len(chains) * p:
            raise InvalidArgumentError(f"{path}: every chain needs {p} coordinates")
        points = np.array([[entries[(chain, coord)] for coord in range(p)] for chain in chains])
        return SampleCloud(points=points, provenance=str(path))


# Instance globale
csv_generator = CSVGenerator()
