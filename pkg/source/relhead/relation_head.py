from collections import OrderedDict

from source.encoder.encoder_output import EncoderOutput
from source.errors import DimensionError, ValidationError
from source.numerics.compute_tape import ComputeTape
from source.numerics.tensor import Tensor
from source.numerics.tensor_ops import TensorOps
from source.relhead.head_weights import HeadWeights


class RelationHead(object):
    """Entity pooling, low-dimensional projection and per-class bilinear scoring."""

    @staticmethod
    def pool_entity(encoder_output: EncoderOutput, positions) -> Tensor:
        pooled = TensorOps.mean_pool(encoder_output.contextual, [positions])
        return TensorOps.reshape(pooled, (pooled.shape[1],))

    @staticmethod
    def pool_entities(encoder_output: EncoderOutput, entity_positions) -> Tensor:
        return TensorOps.mean_pool(encoder_output.contextual, entity_positions)

    @staticmethod
    def project(h: Tensor, weights: HeadWeights) -> Tensor:
        weight = weights[HeadWeights.PROJECTION_WEIGHT]
        if h.data.ndim == 1:
            if h.shape[0] != weight.shape[0]:
                raise DimensionError(f"cannot project a vector of width {h.shape[0]} with {weight.shape}")
            row = TensorOps.reshape(h, (1, h.shape[0]))
            projected = TensorOps.add_bias(TensorOps.matmul(row, weight), weights[HeadWeights.PROJECTION_BIAS])
            return TensorOps.reshape(projected, (weight.shape[1],))
        return TensorOps.add_bias(TensorOps.matmul(h, weight), weights[HeadWeights.PROJECTION_BIAS])

    @staticmethod
    def bilinear_score(h_head: Tensor, h_tail: Tensor, weights: HeadWeights) -> Tensor:
        if h_head.data.ndim != 1 or h_head.shape != h_tail.shape:
            raise DimensionError(f"bilinear_score needs two vectors of one width, got {h_head.shape} and {h_tail.shape}")
        width = h_head.shape[0]
        logits = TensorOps.bilinear(TensorOps.reshape(h_head, (1, width)), TensorOps.reshape(h_tail, (1, width)),
                                    weights[HeadWeights.BILINEAR_WEIGHT], weights.class_bias)
        return TensorOps.reshape(logits, (weights.n_classes,))

    @staticmethod
    def score_pairs(encoder_output: EncoderOutput, entity_positions, pairs, weights: HeadWeights) -> Tensor:
        """Logits [len(pairs) x C] for (head_idx, tail_idx) pairs.

        Every entity named by a pair is pooled and projected once, then head and tail
        rows are gathered for one batched bilinear call.
        """
        if not pairs:
            raise ValidationError("score_pairs needs at least one entity pair")
        entities = sorted({index for pair in pairs for index in pair})
        row_of = {entity: row for row, entity in enumerate(entities)}

        pooled = RelationHead.pool_entities(encoder_output, [entity_positions[entity] for entity in entities])
        projected = RelationHead.project(pooled, weights)
        heads = TensorOps.take_rows(projected, [row_of[head] for head, _ in pairs])
        tails = TensorOps.take_rows(projected, [row_of[tail] for _, tail in pairs])
        return TensorOps.bilinear(heads, tails, weights[HeadWeights.BILINEAR_WEIGHT], weights.class_bias)

    @staticmethod
    def surviving_pairs(entity_positions):
        surviving = [index for index, positions in enumerate(entity_positions) if len(positions) > 0]
        return [(head, tail) for head in surviving for tail in surviving if head != tail]

    @staticmethod
    def score_all_pairs(entity_positions, encoder_output: EncoderOutput, weights: HeadWeights):
        """(head_idx, tail_idx) -> logits for every ordered pair of in-window entities."""
        pairs = RelationHead.surviving_pairs(entity_positions)
        if not pairs:
            return OrderedDict()

        with ComputeTape.no_grad():
            logits = RelationHead.score_pairs(encoder_output, entity_positions, pairs, weights).data
        return OrderedDict((pair, logits[row].copy()) for row, pair in enumerate(pairs))
