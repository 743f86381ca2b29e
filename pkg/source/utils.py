import hashlib
import json
from pathlib import Path

import numpy as np


def get_project_root() -> Path:
    return Path(__file__).parent.parent


def hash_file(path):
    digest = hashlib.sha256()
    with open(path, 'rb') as file:
        for chunk in iter(lambda: file.read(1 << 20), b''):
            digest.update(chunk)
    return digest.hexdigest()


def hash_strings(lines):
    digest = hashlib.sha256()
    for line in lines:
        digest.update(line.encode('utf-8'))
        digest.update(b'\n')
    return digest.hexdigest()


def make_rng(seed):
    return np.random.default_rng(seed)


def write_json(path, payload):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as file:
        json.dump(payload, file, sort_keys=True, indent=2)
        file.write('\n')


def write_json_lines(path, rows):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as file:
        for row in rows:
            file.write(json.dumps(row, sort_keys=True) + '\n')
