import json
import numbers
from pathlib import Path

from source.analysis.prediction.prediction_record import PredictionRecord
from source.corpus.relation_catalog import RelationCatalog
from source.errors import PredictionFileError


class PredictionFileService(object):
    """Reads and writes DocRED submission-style prediction files with an added score field."""

    @staticmethod
    def write_predictions(records, path):
        PredictionFileService.check_unique(records, path)
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as file:
            json.dump([record.to_dictionary() for record in records], file, indent=1, sort_keys=True)
            file.write('\n')

    @staticmethod
    def read_predictions(path):
        with open(path, 'r', encoding='utf-8') as file:
            text = file.read()
        if not text.strip():
            return []

        try:
            rows = json.loads(text)
        except json.JSONDecodeError as error:
            raise PredictionFileError(path, -1, f"not valid JSON at line {error.lineno}, column {error.colno}")
        if not isinstance(rows, list):
            raise PredictionFileError(path, -1, "top level must be a JSON array")

        records = [PredictionFileService.parse_row(row, index, path) for index, row in enumerate(rows)]
        PredictionFileService.check_unique(records, path)
        return records

    @staticmethod
    def parse_row(row, index, path):
        if not isinstance(row, dict):
            raise PredictionFileError(path, index, "record is not a JSON object")
        for field in ('title', 'h_idx', 't_idx', 'r', 'score'):
            if field not in row:
                raise PredictionFileError(path, index, f"missing field {field!r}")

        head_idx, tail_idx, score = row['h_idx'], row['t_idx'], row['score']
        if not isinstance(head_idx, int) or not isinstance(tail_idx, int) \
                or isinstance(head_idx, bool) or isinstance(tail_idx, bool):
            raise PredictionFileError(path, index, "h_idx and t_idx must be integers")
        if not RelationCatalog.is_known(row['r']):
            raise PredictionFileError(path, index, f"unknown relation {row['r']!r}")
        if not isinstance(score, numbers.Real) or isinstance(score, bool) or not 0.0 < score <= 1.0:
            raise PredictionFileError(path, index, f"score {score!r} outside (0, 1]")

        return PredictionRecord(row['title'], head_idx, tail_idx, row['r'], float(score))

    @staticmethod
    def check_unique(records, path):
        seen = set()
        for index, record in enumerate(records):
            if record.key() in seen:
                raise PredictionFileError(path, index, f"duplicate prediction {record.key()}")
            seen.add(record.key())
