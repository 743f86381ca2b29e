import time
from collections import OrderedDict
from functools import partial
from multiprocessing import Pool

import numpy as np
from scipy import special

from source.analysis.prediction.prediction_record import PredictionRecord
from source.constants import Constants
from source.corpus.document_linearizer import DocumentLinearizer
from source.encoder.document_encoder import DocumentEncoder
from source.errors import ConfigurationError
from source.numerics.compute_tape import ComputeTape
from source.relhead.relation_head import RelationHead
from source.training.model_bundle import ModelBundle
from source.training.task_type import TaskType


class Predictor(object):

    @staticmethod
    def pair_probabilities(bundle: ModelBundle, document, vocabulary):
        """(head_idx, tail_idx) -> class probabilities for every in-window ordered pair, in eval mode."""
        linearized = DocumentLinearizer.linearize(document, vocabulary, bundle.encoder_config.max_len)
        with ComputeTape.no_grad():
            output = DocumentEncoder.encode_document(bundle.encoder_config, bundle.encoder_weights, linearized)
            logits = RelationHead.score_all_pairs(linearized.entity_positions, output, bundle.head_weights)
        return OrderedDict((pair, Predictor.to_probabilities(values)) for pair, values in logits.items())

    @staticmethod
    def to_probabilities(logits):
        return special.softmax(np.asarray(logits, dtype=np.float64))

    @staticmethod
    def pipeline_predict(gate_bundle: ModelBundle, relation_bundle: ModelBundle, documents, vocabulary,
                         gate_threshold=Constants.GATE_THRESHOLD, n_workers=1):
        Predictor.check_bundle(gate_bundle, TaskType.gate, vocabulary)
        Predictor.check_bundle(relation_bundle, TaskType.relation, vocabulary)
        if gate_bundle.vocabulary_hash != relation_bundle.vocabulary_hash:
            raise ConfigurationError("gate and relation bundles were trained with different vocabularies")
        if gate_bundle.encoder_config.max_len != relation_bundle.encoder_config.max_len:
            raise ConfigurationError(f"gate bundle max_len {gate_bundle.encoder_config.max_len} differs from "
                                     f"relation bundle max_len {relation_bundle.encoder_config.max_len}")

        function = partial(Predictor.pipeline_document, gate_bundle=gate_bundle, relation_bundle=relation_bundle,
                           vocabulary=vocabulary, gate_threshold=gate_threshold)
        return Predictor.run_in_parallel(function, documents, n_workers)

    @staticmethod
    def pipeline_document(document, gate_bundle, relation_bundle, vocabulary, gate_threshold):
        gate_probabilities = Predictor.pair_probabilities(gate_bundle, document, vocabulary)
        admitted = [(pair, probabilities[1]) for pair, probabilities in gate_probabilities.items()
                    if probabilities[1] > gate_threshold]
        if not admitted:
            return []

        relation_probabilities = Predictor.pair_probabilities(relation_bundle, document, vocabulary)
        records = []
        for (head_idx, tail_idx), gate_probability in admitted:
            probabilities = relation_probabilities[(head_idx, tail_idx)]
            target = int(np.argmax(probabilities))
            score = float(gate_probability) * float(probabilities[target])
            # scores live in (0, 1]; an underflowed product is no prediction
            if score <= 0.0:
                continue
            records.append(PredictionRecord(document.title, head_idx, tail_idx,
                                            relation_bundle.task.relation_id(target), score))
        return records

    @staticmethod
    def joint_predict(joint_bundle: ModelBundle, documents, vocabulary, n_workers=1):
        Predictor.check_bundle(joint_bundle, TaskType.joint, vocabulary)
        function = partial(Predictor.joint_document, joint_bundle=joint_bundle, vocabulary=vocabulary)
        return Predictor.run_in_parallel(function, documents, n_workers)

    @staticmethod
    def joint_document(document, joint_bundle, vocabulary):
        records = []
        for (head_idx, tail_idx), probabilities in Predictor.pair_probabilities(joint_bundle, document,
                                                                                vocabulary).items():
            target = int(np.argmax(probabilities))
            relation_id = joint_bundle.task.relation_id(target)
            if relation_id is not None:
                records.append(PredictionRecord(document.title, head_idx, tail_idx, relation_id,
                                                float(probabilities[target])))
        return records

    @staticmethod
    def run_in_parallel(function, documents, n_workers):
        start_time = time.time()
        if n_workers <= 1:
            results = [function(document) for document in documents]
        else:
            with Pool(n_workers) as pool:
                results = pool.map(function, documents)

        if Constants.VERBOSE:
            print(f"Predicted {len(documents)} documents in {time.time() - start_time:.1f}s")
        return [record for records in results for record in records]

    @staticmethod
    def check_bundle(bundle: ModelBundle, task: TaskType, vocabulary):
        if bundle.task != task:
            raise ConfigurationError(f"expected a {task.value} bundle, got {bundle.task.value}")
        bundle.check_vocabulary(vocabulary)
