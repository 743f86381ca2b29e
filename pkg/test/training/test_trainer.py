import numpy as np
import pytest

from source import utils
from source.corpus.pair_enumerator import PairInstance
from source.corpus.relation_catalog import RelationCatalog
from source.corpus.synthetic_corpus_builder import SyntheticCorpusBuilder
from source.corpus.vocabulary import VocabularyService
from source.encoder.encoder_config import EncoderConfig
from source.encoder.encoder_weights import EncoderWeights
from source.errors import ConfigurationError, DivergenceError
from source.numerics.initializer import Initializer
from source.numerics.tensor import Parameter
from source.relhead.head_config import HeadConfig
from source.relhead.head_weights import HeadWeights
from source.training.dev_evaluator import DevEvaluator
from source.training.model_bundle import ModelBundle
from source.training.train_config import TrainConfig
from source.training.trainer import Trainer, TrainingExample


def small_encoder(vocabulary, **settings):
    return EncoderConfig(**{'vocab_size': len(vocabulary), 'd_model': 8, 'n_layers': 1, 'n_heads': 2, 'd_ff': 16,
                            'max_len': 64, 'dropout_rate': 0.1, **settings})


def assert_same_weights(first, second):
    for name, array in first.to_arrays().items():
        np.testing.assert_array_equal(array, second[name].data)


def pair_example(title, positives, negatives, rng=None):
    pairs = [PairInstance(title, index, index + 1, 5, {5}) for index in range(positives)]
    pairs += [PairInstance(title, index + 1, index, 0, set()) for index in range(negatives)]
    if rng is not None:
        pairs = [pairs[int(index)] for index in rng.permutation(len(pairs))]
    return TrainingExample(None, pairs)


def kept_counts(labeled_per_document):
    targets = [item.target for labeled in labeled_per_document for item in labeled]
    return sum(targets), len(targets) - sum(targets)


class TestBatchSubsampling:

    @pytest.mark.parametrize('documents, expected', [
        ([(1, 20), (0, 20)], (1, 3)),
        ([(10, 5), (1, 100)], (11, 33)),
        ([(0, 2), (0, 7)], (0, 3)),
        ([(2, 1), (0, 0)], (2, 1)),
    ])
    def test_na_budget_follows_batch_positives(self, rng, documents, expected):
        batch = [pair_example(f"doc{index}", *counts) for index, counts in enumerate(documents)]
        labeled = Trainer.batch_pairs(batch, TrainConfig(task='gate', na_ratio=3), rng)
        assert kept_counts(labeled) == expected

    def test_batch_law_over_random_batches(self):
        generator = utils.make_rng(99)
        for _ in range(300):
            counts = [(int(generator.integers(0, 5)), int(generator.integers(0, 30)))
                      for _ in range(int(generator.integers(1, 5)))]
            ratio = float(generator.choice([0, 1, 2.5, 3]))
            batch = [pair_example(f"doc{index}", *pair_counts, rng=generator)
                     for index, pair_counts in enumerate(counts)]

            labeled = Trainer.batch_pairs(batch, TrainConfig(task='gate', na_ratio=ratio), generator)

            positives = sum(p for p, _ in counts)
            negatives = sum(n for _, n in counts)
            limit = int(ratio * positives) if positives else int(ratio)
            assert kept_counts(labeled) == (positives, min(negatives, limit))
            for example, kept in zip(batch, labeled):
                positions = [example.pairs.index(item.pair) for item in kept]
                assert positions == sorted(positions)

    def test_relation_task_is_not_subsampled(self, rng):
        batch = [pair_example('a', 2, 10), pair_example('b', 1, 10)]
        labeled = Trainer.batch_pairs(batch, TrainConfig(task='relation', na_ratio=0), rng)
        assert [len(kept) for kept in labeled] == [2, 1]

    def test_disabled_subsampling_keeps_every_pair(self, rng):
        batch = [pair_example('a', 1, 10), pair_example('b', 0, 10)]
        labeled = Trainer.batch_pairs(batch, TrainConfig(task='gate', subsample_enabled=False), rng)
        assert [len(kept) for kept in labeled] == [11, 10]


class TestTrainer:

    def test_zero_epochs_returns_the_initialization(self, synthetic_documents, vocabulary):
        encoder_config = small_encoder(vocabulary)
        bundle = Trainer.train(synthetic_documents, vocabulary, TrainConfig(epochs=0, seed=3), encoder_config, d_low=4)

        rng = utils.make_rng(3)
        assert_same_weights(bundle.encoder_weights, EncoderWeights.initialize(encoder_config, rng))
        assert_same_weights(bundle.head_weights,
                            HeadWeights.initialize(HeadConfig(8, 97, d_low=4), rng))
        assert bundle.metadata['steps'] == 0
        assert bundle.metadata['epochs_run'] == 0

    def test_same_seed_gives_identical_bundles(self, synthetic_documents, vocabulary):
        config = TrainConfig(task='gate', epochs=2, batch_docs=2, seed=11)
        first = Trainer.train(synthetic_documents, vocabulary, config, small_encoder(vocabulary), d_low=4)
        second = Trainer.train(synthetic_documents, vocabulary, config, small_encoder(vocabulary), d_low=4)

        assert_same_weights(first.encoder_weights, second.encoder_weights)
        assert_same_weights(first.head_weights, second.head_weights)
        assert first.metadata['loss_history'] == second.metadata['loss_history']

    def test_different_seeds_give_different_bundles(self, synthetic_documents, vocabulary):
        first = Trainer.train(synthetic_documents, vocabulary, TrainConfig(epochs=1, seed=1),
                              small_encoder(vocabulary), d_low=4)
        second = Trainer.train(synthetic_documents, vocabulary, TrainConfig(epochs=1, seed=2),
                               small_encoder(vocabulary), d_low=4)
        assert not np.array_equal(first.encoder_weights['token_embedding'].data,
                                  second.encoder_weights['token_embedding'].data)

    def test_metadata_records_the_run(self, synthetic_documents, vocabulary):
        config = TrainConfig(task='relation', epochs=3, batch_docs=4, seed=0)
        bundle = Trainer.train(synthetic_documents, vocabulary, config, small_encoder(vocabulary), d_low=4)

        assert bundle.head_config.n_classes == 96
        assert bundle.metadata['epochs_run'] == 3
        assert bundle.metadata['steps'] == 3 * 2
        assert len(bundle.metadata['loss_history']) == 3
        assert bundle.metadata['dev_metric_history'] == [None, None, None]
        assert bundle.metadata['relation_classes'][:2] == RelationCatalog.RELATION_IDS[:2]
        assert [row['epoch'] for row in Trainer.history_rows(bundle)] == [1, 2, 3]

    def test_early_stopping_keeps_the_best_snapshot(self, synthetic_documents, vocabulary, monkeypatch):
        metrics = iter([0.5, 0.6, 0.4, 0.3, 0.2])
        snapshots = []

        def fake_evaluate(bundle, documents, vocabulary):
            snapshots.append(bundle.encoder_weights.to_arrays())
            return next(metrics)

        monkeypatch.setattr(DevEvaluator, 'evaluate', staticmethod(fake_evaluate))
        config = TrainConfig(epochs=10, patience=2, seed=0)
        bundle = Trainer.train(synthetic_documents, vocabulary, config, small_encoder(vocabulary), d_low=4,
                               dev_corpus=synthetic_documents[:2])

        assert bundle.metadata['epochs_run'] == 4
        assert bundle.metadata['best_epoch'] == 2
        assert bundle.metadata['dev_metric_history'] == [0.5, 0.6, 0.4, 0.3]
        for name, array in snapshots[1].items():
            np.testing.assert_array_equal(bundle.encoder_weights[name].data, array)

    def test_empty_corpus_raises(self, vocabulary):
        with pytest.raises(ConfigurationError):
            Trainer.train([], vocabulary, TrainConfig())

    def test_relation_task_without_positives_raises(self, synthetic_documents, vocabulary):
        for document in synthetic_documents:
            document.gold_labels = []
        with pytest.raises(ConfigurationError, match='no relation training instances'):
            Trainer.train(synthetic_documents, vocabulary, TrainConfig(task='relation'), small_encoder(vocabulary))

    def test_vocab_size_mismatch_raises(self, synthetic_documents, vocabulary):
        encoder_config = EncoderConfig(vocab_size=len(vocabulary) + 1, d_model=8, n_heads=2)
        with pytest.raises(ConfigurationError):
            Trainer.train(synthetic_documents, vocabulary, TrainConfig(), encoder_config)

    def test_nan_loss_aborts(self, synthetic_documents, vocabulary, monkeypatch):
        def nan_parameter(rng, shape, name):
            return Parameter(np.full(shape, np.nan), name=name)

        monkeypatch.setattr(Initializer, 'scaled_uniform', staticmethod(nan_parameter))
        with pytest.raises(DivergenceError, match='epoch 1, batch 0'):
            Trainer.train(synthetic_documents, vocabulary, TrainConfig(epochs=1), small_encoder(vocabulary))

    def test_bundle_task_must_match_head(self, bundle_factory):
        bundle = bundle_factory('gate')
        with pytest.raises(ConfigurationError):
            ModelBundle('joint', bundle.encoder_config, bundle.encoder_weights, bundle.head_config,
                        bundle.head_weights, bundle.vocabulary_hash)

    @pytest.mark.slow
    def test_overfits_a_small_gate_corpus(self):
        documents = SyntheticCorpusBuilder.build(utils.make_rng(21), 5, RelationCatalog.RELATION_IDS[:4])
        vocabulary = VocabularyService.build_vocab(documents)
        encoder_config = EncoderConfig(vocab_size=len(vocabulary), d_model=32, n_layers=1, n_heads=2, d_ff=64,
                                       max_len=64, dropout_rate=0.0)
        config = TrainConfig(task='gate', learning_rate=5e-3, batch_docs=1, epochs=300, seed=0,
                             subsample_enabled=False)

        bundle = Trainer.train(documents, vocabulary, config, encoder_config, d_low=16)

        assert DevEvaluator.gate_f1(bundle, documents, vocabulary) >= 0.95
        losses = np.array(bundle.metadata['loss_history'])
        windows = losses.reshape(-1, 10).mean(axis=1)
        for earlier, later in zip(windows, windows[1:]):
            assert later <= earlier * 1.1 + 0.01

    @pytest.mark.slow
    def test_overfits_a_small_joint_corpus(self):
        documents = SyntheticCorpusBuilder.build(utils.make_rng(21), 5, RelationCatalog.RELATION_IDS[:4])
        vocabulary = VocabularyService.build_vocab(documents)
        encoder_config = EncoderConfig(vocab_size=len(vocabulary), d_model=32, n_layers=1, n_heads=2, d_ff=64,
                                       max_len=64, dropout_rate=0.0)
        config = TrainConfig(task='joint', learning_rate=5e-3, batch_docs=1, epochs=300, seed=0,
                             subsample_enabled=False, eval_every=10)

        bundle = Trainer.train(documents, vocabulary, config, encoder_config, d_low=32, dev_corpus=documents)

        assert bundle.metadata['epochs_run'] == 300
        assert DevEvaluator.evaluate(bundle, documents, vocabulary) >= 0.95

    @pytest.mark.slow
    def test_learns_separable_relations(self):
        relation_ids = RelationCatalog.RELATION_IDS[:8]
        train = SyntheticCorpusBuilder.build_separable(utils.make_rng(5), 40, relation_ids)
        dev = SyntheticCorpusBuilder.build_separable(utils.make_rng(6), 10, relation_ids, title_prefix='dev')
        vocabulary = VocabularyService.build_vocab(train)
        encoder_config = EncoderConfig(vocab_size=len(vocabulary), d_model=16, n_heads=2, mode='mean',
                                       dropout_rate=0.0)
        config = TrainConfig(task='relation', learning_rate=0.01, batch_docs=4, epochs=40, seed=0)

        bundle = Trainer.train(train, vocabulary, config, encoder_config, d_low=16)

        assert DevEvaluator.evaluate(bundle, dev, vocabulary) >= 0.99
