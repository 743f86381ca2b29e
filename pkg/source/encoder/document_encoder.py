import math

import numpy as np

from source.encoder.encoder_config import EncoderConfig, EncoderMode
from source.encoder.encoder_output import EncoderOutput
from source.encoder.encoder_weights import EncoderWeights
from source.errors import ContractError, ValidationError
from source.numerics.tensor_ops import TensorOps


class DocumentEncoder(object):
    """Token ids to contextual embeddings.

    Transformer mode runs learned token and position embeddings through ``n_layers``
    post-norm blocks with full-document attention. Mean mode returns the word
    embeddings unchanged. Dropout only fires when ``train_flag`` is set.
    """

    @staticmethod
    def encode_document(config: EncoderConfig, weights: EncoderWeights, linearized, train_flag=False, rng=None):
        if config.sentence_scoped:
            return DocumentEncoder.encode_sentence_scoped(config, weights, linearized.token_ids,
                                                          linearized.sentence_ids, train_flag, rng)
        return DocumentEncoder.encode(config, weights, linearized.token_ids, linearized.sentence_ids,
                                      train_flag, rng)

    @staticmethod
    def encode(config: EncoderConfig, weights: EncoderWeights, token_ids, sentence_ids, train_flag=False, rng=None):
        token_ids, sentence_ids = DocumentEncoder.validate(config, token_ids, sentence_ids, train_flag, rng)
        token_ids = token_ids[:config.max_len]
        sentence_ids = sentence_ids[:config.max_len]

        embedded = TensorOps.take_rows(weights['token_embedding'], token_ids)
        if config.mode == EncoderMode.mean:
            return EncoderOutput(TensorOps.dropout(embedded, config.dropout_rate, rng, train_flag), sentence_ids)

        positions = TensorOps.take_rows(weights['position_embedding'], np.arange(len(token_ids)))
        hidden = TensorOps.dropout(TensorOps.add(embedded, positions), config.dropout_rate, rng, train_flag)

        attention_maps = []
        for layer in range(config.n_layers):
            hidden, layer_maps = DocumentEncoder.transformer_layer(config, weights, f"layer{layer}", hidden,
                                                                   train_flag, rng)
            attention_maps.append(layer_maps)

        return EncoderOutput(hidden, sentence_ids, attention_maps)

    @staticmethod
    def encode_sentence_scoped(config: EncoderConfig, weights: EncoderWeights, token_ids, sentence_ids,
                               train_flag=False, rng=None):
        """Encodes every contiguous sentence run on its own and stacks the rows in document order.

        Positions restart at 0 inside each sentence; attention maps are returned block diagonal.
        """
        token_ids, sentence_ids = DocumentEncoder.validate(config, token_ids, sentence_ids, train_flag, rng)
        token_ids = token_ids[:config.max_len]
        sentence_ids = sentence_ids[:config.max_len]

        segments = []
        for start, stop in DocumentEncoder.sentence_runs(sentence_ids):
            segments.append((start, stop, DocumentEncoder.encode(config, weights, token_ids[start:stop],
                                                                 sentence_ids[start:stop], train_flag, rng)))

        contextual = segments[0][2].contextual if len(segments) == 1 else \
            TensorOps.concat_rows([output.contextual for _, _, output in segments])

        attention_maps = []
        length = len(token_ids)
        for layer in range(len(segments[0][2].attention_maps)):
            layer_maps = np.zeros((config.n_heads, length, length), dtype=contextual.data.dtype)
            for start, stop, output in segments:
                layer_maps[:, start:stop, start:stop] = output.attention_maps[layer]
            attention_maps.append(layer_maps)

        return EncoderOutput(contextual, sentence_ids, attention_maps)

    @staticmethod
    def transformer_layer(config: EncoderConfig, weights: EncoderWeights, prefix, hidden, train_flag, rng):
        attended, layer_maps = DocumentEncoder.self_attention(config, weights, prefix, hidden, train_flag, rng)
        attended = TensorOps.dropout(attended, config.dropout_rate, rng, train_flag)
        hidden = TensorOps.layer_norm(TensorOps.add(hidden, attended),
                                      weights[f"{prefix}.attention_norm.gain"],
                                      weights[f"{prefix}.attention_norm.shift"])

        expanded = TensorOps.gelu(DocumentEncoder.affine(weights, f"{prefix}.feed_forward_in", hidden))
        contracted = DocumentEncoder.affine(weights, f"{prefix}.feed_forward_out", expanded)
        contracted = TensorOps.dropout(contracted, config.dropout_rate, rng, train_flag)
        hidden = TensorOps.layer_norm(TensorOps.add(hidden, contracted),
                                      weights[f"{prefix}.output_norm.gain"],
                                      weights[f"{prefix}.output_norm.shift"])
        return hidden, layer_maps

    @staticmethod
    def self_attention(config: EncoderConfig, weights: EncoderWeights, prefix, hidden, train_flag=False, rng=None):
        query = DocumentEncoder.affine(weights, f"{prefix}.query", hidden)
        key = DocumentEncoder.affine(weights, f"{prefix}.key", hidden)
        value = DocumentEncoder.affine(weights, f"{prefix}.value", hidden)

        width = config.head_width
        factor = 1.0 / math.sqrt(width)
        heads = []
        maps = []
        for head in range(config.n_heads):
            start, stop = head * width, (head + 1) * width
            scores = TensorOps.matmul(TensorOps.slice_columns(query, start, stop),
                                      TensorOps.transpose(TensorOps.slice_columns(key, start, stop)))
            probabilities = TensorOps.softmax(TensorOps.scale(scores, factor))
            maps.append(probabilities.data.copy())
            probabilities = TensorOps.dropout(probabilities, config.dropout_rate, rng, train_flag)
            heads.append(TensorOps.matmul(probabilities, TensorOps.slice_columns(value, start, stop)))

        combined = heads[0] if len(heads) == 1 else TensorOps.concat_columns(heads)
        return DocumentEncoder.affine(weights, f"{prefix}.output", combined), np.stack(maps)

    @staticmethod
    def affine(weights: EncoderWeights, prefix, x):
        return TensorOps.add_bias(TensorOps.matmul(x, weights[f"{prefix}.weight"]), weights[f"{prefix}.bias"])

    @staticmethod
    def sentence_runs(sentence_ids):
        boundaries = np.flatnonzero(np.diff(sentence_ids)) + 1
        starts = np.concatenate([[0], boundaries])
        stops = np.concatenate([boundaries, [len(sentence_ids)]])
        return [(int(start), int(stop)) for start, stop in zip(starts, stops)]

    @staticmethod
    def validate(config: EncoderConfig, token_ids, sentence_ids, train_flag, rng):
        token_ids = np.asarray(token_ids, dtype=np.int64)
        sentence_ids = np.asarray(sentence_ids, dtype=np.int64)

        if token_ids.ndim != 1 or token_ids.size == 0:
            raise ValidationError(f"expected a non-empty 1-D token id sequence, got shape {token_ids.shape}")
        if sentence_ids.shape != token_ids.shape:
            raise ValidationError(f"{sentence_ids.size} sentence ids for {token_ids.size} tokens")
        out_of_range = np.flatnonzero((token_ids < 0) | (token_ids >= config.vocab_size))
        if out_of_range.size:
            position = int(out_of_range[0])
            raise ValidationError(f"token id {int(token_ids[position])} at position {position} "
                                  f"outside [0, {config.vocab_size})")
        if train_flag and config.dropout_rate > 0 and rng is None:
            raise ContractError("training-mode encoding with dropout needs an rng")

        return token_ids, sentence_ids
