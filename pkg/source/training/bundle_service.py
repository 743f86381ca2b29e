from collections import OrderedDict
from pathlib import Path

import joblib

from source.constants import Constants
from source.encoder.encoder_config import EncoderConfig
from source.encoder.encoder_weights import EncoderWeights
from source.errors import BundleLoadError, DocRelError
from source.relhead.head_config import HeadConfig
from source.relhead.head_weights import HeadWeights
from source.training.model_bundle import ModelBundle
from source.training.task_type import TaskType


class BundleService(object):
    REQUIRED_KEYS = ('version', 'task', 'encoder_config', 'encoder_weights', 'head_config', 'head_weights',
                     'vocabulary_hash', 'metadata')

    @staticmethod
    def to_payload(bundle: ModelBundle):
        return {'version': Constants.BUNDLE_VERSION,
                'task': bundle.task.value,
                'encoder_config': bundle.encoder_config.to_dictionary(),
                'encoder_weights': list(bundle.encoder_weights.to_arrays().items()),
                'head_config': bundle.head_config.to_dictionary(),
                'head_weights': list(bundle.head_weights.to_arrays().items()),
                'vocabulary_hash': bundle.vocabulary_hash,
                'metadata': bundle.metadata}

    @staticmethod
    def save_bundle(bundle: ModelBundle, path):
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        joblib.dump(BundleService.to_payload(bundle), str(path))
        if Constants.VERBOSE:
            print(f"Saved {bundle.task.value} bundle to {path}")

    @staticmethod
    def load_bundle(path, vocabulary=None):
        try:
            payload = joblib.load(str(path))
        except Exception as error:
            raise BundleLoadError(f"{path}: unreadable bundle ({type(error).__name__}: {error})")

        if not isinstance(payload, dict):
            raise BundleLoadError(f"{path}: not a model bundle")
        missing = [key for key in BundleService.REQUIRED_KEYS if key not in payload]
        if missing:
            raise BundleLoadError(f"{path}: bundle is missing {', '.join(missing)}")
        if payload['version'] != Constants.BUNDLE_VERSION:
            raise BundleLoadError(f"{path}: bundle version {payload['version']!r}, "
                                  f"expected {Constants.BUNDLE_VERSION!r}")

        try:
            bundle = ModelBundle(task=TaskType(payload['task']),
                                 encoder_config=EncoderConfig.from_dictionary(payload['encoder_config']),
                                 encoder_weights=EncoderWeights.from_arrays(OrderedDict(payload['encoder_weights'])),
                                 head_config=HeadConfig.from_dictionary(payload['head_config']),
                                 head_weights=HeadWeights.from_arrays(OrderedDict(payload['head_weights'])),
                                 vocabulary_hash=payload['vocabulary_hash'],
                                 metadata=payload['metadata'])
        except (DocRelError, ValueError, TypeError) as error:
            raise BundleLoadError(f"{path}: inconsistent bundle ({error})")

        if vocabulary is not None and vocabulary.content_hash != bundle.vocabulary_hash:
            raise BundleLoadError(f"{path}: vocabulary hash mismatch (bundle {bundle.vocabulary_hash[:12]}, "
                                  f"supplied {vocabulary.content_hash[:12]})")
        return bundle
