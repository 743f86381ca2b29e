import numpy as np

from source import utils
from source.corpus.document_linearizer import DocumentLinearizer
from source.corpus.pair_enumerator import PairEnumerator
from source.corpus.relation_catalog import RelationCatalog
from source.corpus.synthetic_corpus_builder import SyntheticCorpusBuilder
from source.corpus.vocabulary import VocabularyService
from source.encoder.document_encoder import DocumentEncoder
from source.encoder.encoder_config import EncoderConfig
from source.encoder.encoder_output import EncoderOutput
from source.encoder.encoder_weights import EncoderWeights
from source.numerics.gradient_checker import GradientChecker
from source.numerics.initializer import Initializer
from source.numerics.precision import Precision
from source.numerics.tensor import Tensor
from source.numerics.tensor_ops import TensorOps
from source.relhead.head_config import HeadConfig
from source.relhead.head_weights import HeadWeights
from source.relhead.relation_head import RelationHead
from source.training.task_type import TaskType


class GradientCheckSuite(object):
    """Finite-difference checks over every differentiable stage of the model, smallest first."""

    @staticmethod
    def run(seed=0, max_coordinates=None):
        checks = [GradientCheckSuite.check_affine,
                  GradientCheckSuite.check_layer_norm,
                  GradientCheckSuite.check_attention_block,
                  GradientCheckSuite.check_projection,
                  GradientCheckSuite.check_bilinear_head,
                  GradientCheckSuite.check_end_to_end]
        return [check(utils.make_rng(seed), max_coordinates) for check in checks]

    @staticmethod
    def weighted_sum(x: Tensor, readout):
        return TensorOps.sum(TensorOps.multiply(x, Tensor(readout)))

    @staticmethod
    def check_affine(rng, max_coordinates=None):
        with Precision.wide():
            inputs = rng.normal(size=(4, 5))
            readout = rng.normal(size=(4, 3))
            weight = Initializer.scaled_uniform(rng, (5, 3), 'affine.weight')
            bias = Initializer.zeros((3,), 'affine.bias')
            bias.data[:] = rng.normal(size=3)

        def fragment():
            output = TensorOps.add_bias(TensorOps.matmul(Tensor(inputs), weight), bias)
            return GradientCheckSuite.weighted_sum(TensorOps.gelu(output), readout)

        return GradientChecker.grad_check(fragment, [weight, bias], label='affine', max_coordinates=max_coordinates)

    @staticmethod
    def check_layer_norm(rng, max_coordinates=None):
        with Precision.wide():
            readout = rng.normal(size=(4, 6))
            inputs = Initializer.scaled_uniform(rng, (4, 6), 'layer_norm.input')
            gain = Initializer.ones((6,), 'layer_norm.gain')
            shift = Initializer.zeros((6,), 'layer_norm.shift')
            gain.data += rng.normal(scale=0.1, size=6)

        def fragment():
            return GradientCheckSuite.weighted_sum(TensorOps.layer_norm(inputs, gain, shift), readout)

        return GradientChecker.grad_check(fragment, [inputs, gain, shift], label='layer_norm',
                                          max_coordinates=max_coordinates)

    @staticmethod
    def check_attention_block(rng, max_coordinates=None):
        config = EncoderConfig(vocab_size=4, d_model=8, n_layers=1, n_heads=2, d_ff=8, max_len=8, dropout_rate=0.0)
        with Precision.wide():
            weights = EncoderWeights.initialize(config, rng)
            hidden = Initializer.scaled_uniform(rng, (5, 8), 'attention.input')
            readout = rng.normal(size=(5, 8))
        parameters = [hidden] + [weights[f"layer0.{name}.{kind}"] for name in ('query', 'key', 'value', 'output')
                                 for kind in ('weight', 'bias')]

        def fragment():
            attended, _ = DocumentEncoder.self_attention(config, weights, 'layer0', hidden)
            return GradientCheckSuite.weighted_sum(attended, readout)

        return GradientChecker.grad_check(fragment, parameters, label='attention_block',
                                          max_coordinates=max_coordinates)

    @staticmethod
    def check_projection(rng, max_coordinates=None):
        config = HeadConfig(d_model=6, n_classes=3, d_low=4)
        with Precision.wide():
            weights = HeadWeights.initialize(config, rng)
            weights[HeadWeights.PROJECTION_BIAS].data[:] = rng.normal(size=4)
            h = Initializer.scaled_uniform(rng, (1, 6), 'projection.input')
            readout = rng.normal(size=(1, 4))
        parameters = [h, weights[HeadWeights.PROJECTION_WEIGHT], weights[HeadWeights.PROJECTION_BIAS]]

        def fragment():
            return GradientCheckSuite.weighted_sum(RelationHead.project(h, weights), readout)

        return GradientChecker.grad_check(fragment, parameters, label='projection', max_coordinates=max_coordinates)

    @staticmethod
    def check_bilinear_head(rng, max_coordinates=None):
        config = HeadConfig(d_model=6, n_classes=4, d_low=3)
        with Precision.wide():
            weights = HeadWeights.initialize(config, rng)
            weights[HeadWeights.CLASS_BIAS].data[:] = rng.normal(size=4)
            contextual = Initializer.scaled_uniform(rng, (7, 6), 'head.contextual')
        entity_positions = [[0, 3], [1], [4, 5, 6]]
        pairs = RelationHead.surviving_pairs(entity_positions)
        labels = rng.integers(config.n_classes, size=len(pairs))

        def fragment():
            output = EncoderOutput(contextual, np.zeros(7, dtype=np.int64))
            logits = RelationHead.score_pairs(output, entity_positions, pairs, weights)
            return TensorOps.cross_entropy_loss(logits, labels)

        return GradientChecker.grad_check(fragment, [contextual] + list(weights), label='bilinear_head',
                                          max_coordinates=max_coordinates)

    @staticmethod
    def check_end_to_end(rng, max_coordinates=None):
        documents = SyntheticCorpusBuilder.build(rng, 1, RelationCatalog.RELATION_IDS[:3], entities_per_document=3,
                                                 sentences_per_document=2, relations_per_document=2,
                                                 sentence_length=4, title_prefix='check')
        vocabulary = VocabularyService.build_vocab(documents)
        linearized = DocumentLinearizer.linearize(documents[0], vocabulary)

        encoder_config = EncoderConfig(vocab_size=len(vocabulary), d_model=8, n_layers=1, n_heads=2, d_ff=12,
                                       max_len=16, dropout_rate=0.0)
        head_config = HeadConfig(d_model=8, n_classes=TaskType.joint.n_classes, d_low=4)
        with Precision.wide():
            encoder_weights = EncoderWeights.initialize(encoder_config, rng)
            head_weights = HeadWeights.initialize(head_config, rng)

        pair_instances = PairEnumerator.enumerate_pairs(documents[0])
        pairs = [(pair.head_idx, pair.tail_idx) for pair in pair_instances]
        labels = [pair.label_class for pair in pair_instances]

        def fragment():
            output = DocumentEncoder.encode_document(encoder_config, encoder_weights, linearized)
            logits = RelationHead.score_pairs(output, linearized.entity_positions, pairs, head_weights)
            return TensorOps.cross_entropy_loss(logits, labels)

        return GradientChecker.grad_check(fragment, list(encoder_weights) + list(head_weights), label='end_to_end',
                                          max_coordinates=max_coordinates)
