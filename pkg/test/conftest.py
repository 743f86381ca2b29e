import numpy as np
import pytest

from source import utils
from source.constants import Constants
from source.corpus.relation_catalog import RelationCatalog
from source.corpus.synthetic_corpus_builder import SyntheticCorpusBuilder
from source.corpus.vocabulary import VocabularyService
from source.encoder.encoder_config import EncoderConfig
from source.encoder.encoder_weights import EncoderWeights
from source.numerics.compute_tape import ComputeTape
from source.relhead.head_config import HeadConfig
from source.relhead.head_weights import HeadWeights
from source.training.model_bundle import ModelBundle
from source.training.task_type import TaskType


@pytest.fixture(autouse=True)
def quiet(monkeypatch, tmp_path):
    monkeypatch.setattr(Constants, 'VERBOSE', False)
    monkeypatch.setattr(Constants, 'FIGURE_FILE_PATH', tmp_path.joinpath('figures'))
    ComputeTape.current().clear()
    yield
    ComputeTape.current().clear()


@pytest.fixture
def rng():
    return utils.make_rng(1234)


@pytest.fixture
def synthetic_documents():
    return SyntheticCorpusBuilder.build(utils.make_rng(7), 6, RelationCatalog.RELATION_IDS[:5])


@pytest.fixture
def vocabulary(synthetic_documents):
    return VocabularyService.build_vocab(synthetic_documents)


@pytest.fixture
def bundle_factory(vocabulary):
    """Untrained bundles over the shared synthetic vocabulary, one per task."""

    def make(task, seed=0, d_model=16, n_layers=1, n_heads=2, mode='transformer', sentence_scoped=False, d_low=8):
        task = TaskType(task)
        generator = np.random.default_rng(seed)
        encoder_config = EncoderConfig(vocab_size=len(vocabulary), d_model=d_model, n_layers=n_layers,
                                       n_heads=n_heads, d_ff=2 * d_model, max_len=64, dropout_rate=0.0, mode=mode,
                                       sentence_scoped=sentence_scoped)
        head_config = HeadConfig(d_model=d_model, n_classes=task.n_classes, d_low=d_low)
        return ModelBundle(task, encoder_config, EncoderWeights.initialize(encoder_config, generator), head_config,
                           HeadWeights.initialize(head_config, generator), vocabulary.content_hash)

    return make
