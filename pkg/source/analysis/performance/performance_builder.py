import math
from collections import Counter

import numpy as np
import pandas as pd
from sklearn.metrics import accuracy_score

from source.analysis.performance.eval_report import EvalReport
from source.analysis.prediction.predictor import Predictor
from source.corpus.pair_enumerator import PairEnumerator
from source.corpus.relation_catalog import RelationCatalog
from source.errors import ScoringError
from source.training.model_bundle import ModelBundle


class PerformanceBuilder(object):

    @staticmethod
    def micro_f1(predictions, documents, step2_accuracy=None):
        """Counts predicted (title, head, tail, relation) triples against every gold triple.

        Precision is 0 when nothing is predicted; F1 is 0 when precision and recall are both 0.
        """
        PerformanceBuilder.check_references(predictions, documents)
        gold = PerformanceBuilder.gold_triples(documents)
        predicted = {record.key() for record in predictions}

        true_positives = len(predicted & gold)
        false_positives = len(predicted) - true_positives
        false_negatives = len(gold) - true_positives
        precision, recall, f1 = PerformanceBuilder.precision_recall_f1(true_positives, len(predicted), len(gold))

        return EvalReport(true_positives=true_positives,
                          false_positives=false_positives,
                          false_negatives=false_negatives,
                          precision=precision,
                          recall=recall,
                          f1=f1,
                          auc=PerformanceBuilder.average_precision(predictions, documents),
                          step2_accuracy=step2_accuracy,
                          relation_breakdown=PerformanceBuilder.relation_breakdown(predictions, gold))

    @staticmethod
    def precision_recall_f1(true_positives, number_predicted, number_gold):
        precision = true_positives / number_predicted if number_predicted else 0.0
        recall = true_positives / number_gold if number_gold else 0.0
        f1 = 2 * true_positives / (number_predicted + number_gold) if true_positives else 0.0
        return precision, recall, f1

    @staticmethod
    def ranked(predictions):
        return sorted(predictions, key=lambda record: (-record.score, record.title, record.head_idx,
                                                       record.tail_idx, record.relation_id))

    @staticmethod
    def average_precision(predictions, documents):
        gold = PerformanceBuilder.gold_triples(documents)
        if not gold:
            return 0.0

        correct = 0
        terms = []
        seen = set()
        for rank, record in enumerate(PerformanceBuilder.ranked(predictions), start=1):
            key = record.key()
            if key in gold and key not in seen:
                correct += 1
                terms.append(correct / rank)
            seen.add(key)
        return math.fsum(terms) / len(gold)

    @staticmethod
    def relation_breakdown(predictions, gold):
        predicted = pd.DataFrame([(record.relation_id, record.key() in gold) for record in predictions],
                                 columns=['relation_id', 'correct'])
        counts = predicted.groupby('relation_id')['correct'].agg(['size', 'sum'])
        gold_counts = pd.Series(Counter(relation_id for _, _, _, relation_id in gold), dtype='int64')

        relation_ids = sorted(set(counts.index) | set(gold_counts.index), key=RelationCatalog.class_index)
        frame = pd.DataFrame({'relation_id': relation_ids})
        frame['name'] = frame['relation_id'].map(RelationCatalog.name)
        frame['true_positives'] = frame['relation_id'].map(counts['sum']).fillna(0).astype(int)
        frame['predicted'] = frame['relation_id'].map(counts['size']).fillna(0).astype(int)
        frame['gold'] = frame['relation_id'].map(gold_counts).fillna(0).astype(int)

        frame['precision'] = np.where(frame['predicted'] > 0,
                                      frame['true_positives'] / frame['predicted'].clip(lower=1), 0.0)
        frame['recall'] = np.where(frame['gold'] > 0, frame['true_positives'] / frame['gold'].clip(lower=1), 0.0)
        frame['f1'] = np.where(frame['true_positives'] > 0,
                               2 * frame['true_positives'] / (frame['predicted'] + frame['gold']).clip(lower=1), 0.0)
        return frame

    @staticmethod
    def step2_accuracy(relation_bundle: ModelBundle, documents, vocabulary):
        """Share of gold-positive in-window pairs whose top relation is one of their gold relations.

        None when there is no such pair.
        """
        true_classes = []
        predicted_classes = []
        for document in documents:
            positives = [pair for pair in PairEnumerator.enumerate_pairs(document) if pair.is_positive]
            if not positives:
                continue
            probabilities = Predictor.pair_probabilities(relation_bundle, document, vocabulary)
            for pair in positives:
                pair_probabilities = probabilities.get((pair.head_idx, pair.tail_idx))
                if pair_probabilities is None:
                    continue
                predicted = int(np.argmax(pair_probabilities)) + 1
                predicted_classes.append(predicted)
                true_classes.append(predicted if predicted in pair.all_gold_classes else pair.label_class)

        if not true_classes:
            return None
        return float(accuracy_score(true_classes, predicted_classes))

    @staticmethod
    def gold_triples(documents):
        return set().union(*(document.gold_triples() for document in documents)) if documents else set()

    @staticmethod
    def check_references(predictions, documents):
        entity_counts = {document.title: document.number_of_entities for document in documents}
        for index, record in enumerate(predictions):
            if record.title not in entity_counts:
                raise ScoringError(f"prediction {index} references unknown document {record.title!r}")
            number_of_entities = entity_counts[record.title]
            if not (0 <= record.head_idx < number_of_entities and 0 <= record.tail_idx < number_of_entities):
                raise ScoringError(f"prediction {index} references entity pair ({record.head_idx}, "
                                   f"{record.tail_idx}) outside document {record.title!r} "
                                   f"with {number_of_entities} entities")
