from sklearn.metrics import f1_score

from source.analysis.performance.performance_builder import PerformanceBuilder
from source.analysis.prediction.predictor import Predictor
from source.constants import Constants
from source.corpus.pair_enumerator import PairEnumerator
from source.training.model_bundle import ModelBundle
from source.training.task_type import TaskType


class DevEvaluator(object):
    """Early-stopping metric per task: binary F1 for the gate, accuracy for relations, micro-F1 for joint."""

    @staticmethod
    def evaluate(bundle: ModelBundle, documents, vocabulary):
        if bundle.task == TaskType.gate:
            return DevEvaluator.gate_f1(bundle, documents, vocabulary)
        if bundle.task == TaskType.relation:
            return PerformanceBuilder.step2_accuracy(bundle, documents, vocabulary)
        predictions = Predictor.joint_predict(bundle, documents, vocabulary)
        return PerformanceBuilder.micro_f1(predictions, documents).f1

    @staticmethod
    def gate_f1(bundle: ModelBundle, documents, vocabulary):
        true_labels = []
        predicted_labels = []
        for document in documents:
            probabilities = Predictor.pair_probabilities(bundle, document, vocabulary)
            for pair in PairEnumerator.enumerate_pairs(document):
                pair_probabilities = probabilities.get((pair.head_idx, pair.tail_idx))
                predicted = pair_probabilities is not None and pair_probabilities[1] > Constants.GATE_THRESHOLD
                true_labels.append(int(pair.is_positive))
                predicted_labels.append(int(predicted))

        if not true_labels:
            return None
        return float(f1_score(true_labels, predicted_labels, zero_division=0))
