from collections import OrderedDict

import numpy as np
import pytest

from source.analysis.prediction.predictor import Predictor
from source.corpus.relation_catalog import RelationCatalog
from source.corpus.vocabulary import Vocabulary
from source.errors import ConfigurationError
from source.relhead.head_weights import HeadWeights
from source.training.task_type import TaskType


def zero_head(bundle):
    for parameter in bundle.head_weights:
        parameter.data[...] = 0.0
    return bundle


class TestPipelinePredict:

    def test_gate_rejecting_every_pair_gives_no_predictions(self, bundle_factory, synthetic_documents, vocabulary):
        predictions = Predictor.pipeline_predict(bundle_factory('gate'), bundle_factory('relation'),
                                                 synthetic_documents, vocabulary, gate_threshold=1.0)
        assert predictions == []

    def test_score_is_gate_times_relation_probability(self, bundle_factory, synthetic_documents, vocabulary,
                                                      monkeypatch):
        document = synthetic_documents[0]
        relation_probabilities = np.full(96, 0.1 / 95)
        relation_probabilities[4] = 0.9

        def pair_probabilities(bundle, document, vocabulary):
            if bundle.task == TaskType.gate:
                return OrderedDict([((0, 1), np.array([0.2, 0.8])), ((1, 0), np.array([0.7, 0.3]))])
            return OrderedDict([((0, 1), relation_probabilities), ((1, 0), relation_probabilities)])

        monkeypatch.setattr(Predictor, 'pair_probabilities', staticmethod(pair_probabilities))
        predictions = Predictor.pipeline_predict(bundle_factory('gate'), bundle_factory('relation'), [document],
                                                 vocabulary)

        assert len(predictions) == 1
        assert predictions[0].key() == (document.title, 0, 1, RelationCatalog.RELATION_IDS[4])
        assert predictions[0].score == pytest.approx(0.72)

    def test_matches_pair_by_pair_composition(self, bundle_factory, synthetic_documents, vocabulary):
        gate, relation = bundle_factory('gate', seed=1), bundle_factory('relation', seed=2)
        predictions = Predictor.pipeline_predict(gate, relation, synthetic_documents, vocabulary, gate_threshold=0.4)

        expected = []
        for document in synthetic_documents:
            gate_probabilities = Predictor.pair_probabilities(gate, document, vocabulary)
            relation_probabilities = Predictor.pair_probabilities(relation, document, vocabulary)
            for (head, tail), probabilities in gate_probabilities.items():
                if probabilities[1] > 0.4:
                    target = int(np.argmax(relation_probabilities[(head, tail)]))
                    expected.append((document.title, head, tail, RelationCatalog.RELATION_IDS[target],
                                     float(probabilities[1]) * float(relation_probabilities[(head, tail)][target])))

        assert [record.key() + (record.score,) for record in predictions] == expected

    def test_raising_the_threshold_only_removes_predictions(self, bundle_factory, synthetic_documents, vocabulary):
        gate, relation = bundle_factory('gate', seed=1), bundle_factory('relation', seed=2)
        previous = None
        for threshold in (0.0, 0.3, 0.45, 0.5, 0.55, 0.7, 1.0):
            keys = {record.key() for record in Predictor.pipeline_predict(gate, relation, synthetic_documents,
                                                                          vocabulary, gate_threshold=threshold)}
            if previous is not None:
                assert keys <= previous
            previous = keys
        assert previous == set()

    def test_zero_threshold_admits_every_pair(self, bundle_factory, synthetic_documents, vocabulary):
        predictions = Predictor.pipeline_predict(bundle_factory('gate'), bundle_factory('relation'),
                                                 synthetic_documents, vocabulary, gate_threshold=0.0)
        assert len(predictions) == sum(d.number_of_entities * (d.number_of_entities - 1) for d in synthetic_documents)

    def test_swapped_bundles_are_rejected(self, bundle_factory, synthetic_documents, vocabulary):
        with pytest.raises(ConfigurationError, match='expected a gate bundle'):
            Predictor.pipeline_predict(bundle_factory('relation'), bundle_factory('gate'), synthetic_documents,
                                       vocabulary)

    def test_bundles_with_different_windows_are_rejected(self, bundle_factory, synthetic_documents, vocabulary):
        relation = bundle_factory('relation')
        relation.encoder_config.max_len = 10
        with pytest.raises(ConfigurationError, match='max_len 64 differs from relation bundle max_len 10'):
            Predictor.pipeline_predict(bundle_factory('gate'), relation, synthetic_documents, vocabulary,
                                       gate_threshold=0.0)

    def test_underflowed_scores_are_dropped(self, bundle_factory, synthetic_documents, vocabulary, monkeypatch):
        document = synthetic_documents[0]

        def pair_probabilities(bundle, document, vocabulary):
            if bundle.task == TaskType.gate:
                return OrderedDict([((0, 1), np.array([1.0, 5e-324])), ((1, 0), np.array([0.4, 0.6]))])
            return OrderedDict([((0, 1), np.full(96, 1 / 96)), ((1, 0), np.full(96, 1 / 96))])

        monkeypatch.setattr(Predictor, 'pair_probabilities', staticmethod(pair_probabilities))
        predictions = Predictor.pipeline_predict(bundle_factory('gate'), bundle_factory('relation'), [document],
                                                 vocabulary, gate_threshold=0.0)

        assert [record.key()[1:3] for record in predictions] == [(1, 0)]
        assert all(0.0 < record.score <= 1.0 for record in predictions)

    def test_other_vocabulary_is_rejected(self, bundle_factory, synthetic_documents):
        with pytest.raises(ConfigurationError):
            Predictor.pipeline_predict(bundle_factory('gate'), bundle_factory('relation'), synthetic_documents,
                                       Vocabulary([('elsewhere', 1)]))


class TestJointPredict:

    def test_zero_head_predicts_nothing(self, bundle_factory, synthetic_documents, vocabulary):
        bundle = zero_head(bundle_factory('joint'))
        assert Predictor.joint_predict(bundle, synthetic_documents, vocabulary) == []

    def test_dominant_class_is_predicted_for_every_pair(self, bundle_factory, synthetic_documents, vocabulary):
        bundle = zero_head(bundle_factory('joint'))
        bundle.head_weights[HeadWeights.CLASS_BIAS].data[RelationCatalog.class_index('P17')] = 10.0
        document = synthetic_documents[0]

        predictions = Predictor.joint_predict(bundle, [document], vocabulary)

        assert len(predictions) == document.number_of_entities * (document.number_of_entities - 1)
        assert {record.relation_id for record in predictions} == {'P17'}
        expected = np.exp(10.0) / (np.exp(10.0) + 96)
        assert predictions[0].score == pytest.approx(expected, rel=1e-6)

    def test_matches_pair_by_pair_argmax(self, bundle_factory, synthetic_documents, vocabulary):
        bundle = bundle_factory('joint', seed=4)
        bundle.head_weights[HeadWeights.CLASS_BIAS].data[:] = np.linspace(-1.0, 1.0, 97)
        predictions = Predictor.joint_predict(bundle, synthetic_documents, vocabulary)

        expected = []
        for document in synthetic_documents:
            for (head, tail), probabilities in Predictor.pair_probabilities(bundle, document, vocabulary).items():
                target = int(np.argmax(probabilities))
                if target != RelationCatalog.NA_CLASS:
                    expected.append((document.title, head, tail, RelationCatalog.relation_id(target),
                                     float(probabilities[target])))

        assert [record.key() + (record.score,) for record in predictions] == expected

    def test_worker_pool_gives_the_same_predictions(self, bundle_factory, synthetic_documents, vocabulary):
        bundle = bundle_factory('joint', seed=4)
        bundle.head_weights[HeadWeights.CLASS_BIAS].data[:] = np.linspace(-1.0, 1.0, 97)
        serial = Predictor.joint_predict(bundle, synthetic_documents, vocabulary, n_workers=1)
        pooled = Predictor.joint_predict(bundle, synthetic_documents, vocabulary, n_workers=2)
        assert serial == pooled

    def test_probabilities_sum_to_one(self, bundle_factory, synthetic_documents, vocabulary):
        probabilities = Predictor.pair_probabilities(bundle_factory('joint'), synthetic_documents[0], vocabulary)
        for values in probabilities.values():
            assert values.dtype == np.float64
            assert values.sum() == pytest.approx(1.0)

    def test_non_joint_bundle_is_rejected(self, bundle_factory, synthetic_documents, vocabulary):
        with pytest.raises(ConfigurationError):
            Predictor.joint_predict(bundle_factory('gate'), synthetic_documents, vocabulary)
