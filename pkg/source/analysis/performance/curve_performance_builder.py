import numpy as np

from source.analysis.performance.curve_performance import PrecisionRecallPerformance
from source.analysis.performance.performance_builder import PerformanceBuilder


class CurvePerformanceBuilder(object):

    @staticmethod
    def build_precision_recall(predictions, documents, label=''):
        """Precision and recall after each rank of the ranked prediction list, starting from (0, 1)."""
        gold = PerformanceBuilder.gold_triples(documents)
        ranked = PerformanceBuilder.ranked(predictions)

        correct = np.cumsum([record.key() in gold for record in ranked])
        ranks = np.arange(1, len(ranked) + 1)
        precisions = correct / ranks if len(ranked) else np.array([])
        recalls = correct / len(gold) if gold else np.zeros(len(ranked))

        return PrecisionRecallPerformance(recalls=np.insert(recalls.astype(float), 0, 0.0),
                                          precisions=np.insert(precisions.astype(float), 0, 1.0),
                                          label=label)
