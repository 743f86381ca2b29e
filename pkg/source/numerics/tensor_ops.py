import math

import numpy as np
from scipy import special

from source.errors import DimensionError, ValidationError, PoolingError
from source.numerics.compute_tape import ComputeTape
from source.numerics.tensor import Tensor


class TensorOps(object):
    """Differentiable operations over Tensors.

    Each op computes its forward value with numpy and, when any input requires grad
    and the tape is recording, records a backward rule mapping the output gradient to
    one gradient per input (None where an input takes no gradient).
    """

    @staticmethod
    def record(array, inputs, backward_rule):
        output = Tensor.from_array(array)
        if ComputeTape.is_recording() and any(tensor.requires_grad for tensor in inputs):
            output.requires_grad = True
            output.is_leaf = False
            ComputeTape.current().record(output, inputs, backward_rule)
        return output

    @staticmethod
    def matmul(a: Tensor, b: Tensor) -> Tensor:
        if a.data.ndim != 2 or b.data.ndim != 2 or a.shape[1] != b.shape[0]:
            raise DimensionError(f"matmul shape mismatch: {a.shape} x {b.shape}")

        a_data, b_data = a.data, b.data

        def backward(grad):
            return grad @ b_data.T, a_data.T @ grad

        return TensorOps.record(a_data @ b_data, [a, b], backward)

    @staticmethod
    def add(a: Tensor, b: Tensor) -> Tensor:
        if a.shape != b.shape:
            raise DimensionError(f"add shape mismatch: {a.shape} + {b.shape}")
        return TensorOps.record(a.data + b.data, [a, b], lambda grad: (grad, grad))

    @staticmethod
    def add_bias(x: Tensor, bias: Tensor) -> Tensor:
        if bias.data.ndim != 1 or x.shape[-1] != bias.shape[0]:
            raise DimensionError(f"bias shape {bias.shape} does not match input {x.shape}")

        def backward(grad):
            bias_grad = grad.sum(axis=0) if grad.ndim == 2 else grad
            return grad, bias_grad

        return TensorOps.record(x.data + bias.data, [x, bias], backward)

    @staticmethod
    def scale(x: Tensor, factor) -> Tensor:
        factor = x.data.dtype.type(factor)
        return TensorOps.record(x.data * factor, [x], lambda grad: (grad * factor,))

    @staticmethod
    def multiply(a: Tensor, b: Tensor) -> Tensor:
        if a.shape != b.shape:
            raise DimensionError(f"multiply shape mismatch: {a.shape} * {b.shape}")
        a_data, b_data = a.data, b.data
        return TensorOps.record(a_data * b_data, [a, b], lambda grad: (grad * b_data, grad * a_data))

    @staticmethod
    def sum(x: Tensor) -> Tensor:
        shape = x.shape
        return TensorOps.record(np.array(x.data.sum()), [x], lambda grad: (np.full(shape, grad, dtype=grad.dtype),))

    @staticmethod
    def mean(x: Tensor) -> Tensor:
        shape = x.shape
        count = x.size

        def backward(grad):
            return np.full(shape, grad / count, dtype=grad.dtype),

        return TensorOps.record(np.array(x.data.mean()), [x], backward)

    @staticmethod
    def transpose(x: Tensor) -> Tensor:
        if x.data.ndim != 2:
            raise DimensionError(f"transpose needs a matrix, got shape {x.shape}")
        return TensorOps.record(x.data.T.copy(), [x], lambda grad: (grad.T,))

    @staticmethod
    def reshape(x: Tensor, shape) -> Tensor:
        original = x.shape
        try:
            reshaped = x.data.reshape(shape)
        except ValueError:
            raise DimensionError(f"cannot reshape {original} into {tuple(shape)}")
        return TensorOps.record(reshaped, [x], lambda grad: (grad.reshape(original),))

    @staticmethod
    def slice_columns(x: Tensor, start, stop) -> Tensor:
        shape = x.shape

        def backward(grad):
            full = np.zeros(shape, dtype=grad.dtype)
            full[:, start:stop] = grad
            return full,

        return TensorOps.record(x.data[:, start:stop].copy(), [x], backward)

    @staticmethod
    def concat_columns(tensors) -> Tensor:
        boundaries = np.cumsum([tensor.shape[1] for tensor in tensors])[:-1]
        array = np.concatenate([tensor.data for tensor in tensors], axis=1)
        return TensorOps.record(array, list(tensors), lambda grad: tuple(np.split(grad, boundaries, axis=1)))

    @staticmethod
    def concat_rows(tensors) -> Tensor:
        boundaries = np.cumsum([tensor.shape[0] for tensor in tensors])[:-1]
        array = np.concatenate([tensor.data for tensor in tensors], axis=0)
        return TensorOps.record(array, list(tensors), lambda grad: tuple(np.split(grad, boundaries, axis=0)))

    @staticmethod
    def take_rows(x: Tensor, indices) -> Tensor:
        indices = np.asarray(indices, dtype=np.int64)
        if indices.size and (indices.min() < 0 or indices.max() >= x.shape[0]):
            raise DimensionError(f"row index out of range for shape {x.shape}")
        shape = x.shape

        def backward(grad):
            full = np.zeros(shape, dtype=grad.dtype)
            np.add.at(full, indices, grad)
            return full,

        return TensorOps.record(x.data[indices], [x], backward)

    @staticmethod
    def mean_pool(x: Tensor, groups) -> Tensor:
        """Row means of x over each group of row positions, one output row per group.

        Positions are sorted before averaging so the result does not depend on the
        order in which a group lists them.
        """
        if x.data.ndim != 2:
            raise DimensionError(f"mean_pool needs a matrix, got shape {x.shape}")

        sorted_groups = []
        for group_index, group in enumerate(groups):
            positions = np.sort(np.asarray(group, dtype=np.int64))
            if positions.size == 0:
                raise PoolingError(f"group {group_index} has no positions to pool")
            if positions[0] < 0 or positions[-1] >= x.shape[0]:
                raise PoolingError(f"group {group_index} has positions outside [0, {x.shape[0]})")
            sorted_groups.append(positions)

        pooled = np.stack([x.data[positions].mean(axis=0) for positions in sorted_groups])
        shape = x.shape

        def backward(grad):
            full = np.zeros(shape, dtype=grad.dtype)
            for row, positions in enumerate(sorted_groups):
                np.add.at(full, positions, grad[row] / positions.size)
            return full,

        return TensorOps.record(pooled, [x], backward)

    @staticmethod
    def gelu(x: Tensor) -> Tensor:
        data = x.data
        cdf = 0.5 * (1.0 + special.erf(data / math.sqrt(2.0)))

        def backward(grad):
            density = np.exp(-0.5 * data * data) / math.sqrt(2.0 * math.pi)
            return grad * (cdf + data * density),

        return TensorOps.record((data * cdf).astype(data.dtype), [x], backward)

    @staticmethod
    def layer_norm(x: Tensor, gain: Tensor, shift: Tensor, epsilon=1e-5) -> Tensor:
        data = x.data
        width = data.shape[-1]
        centered = data - data.mean(axis=-1, keepdims=True)
        inverse_std = 1.0 / np.sqrt((centered * centered).mean(axis=-1, keepdims=True) + epsilon)
        normalized = centered * inverse_std
        gain_data = gain.data

        def backward(grad):
            normalized_grad = grad * gain_data
            input_grad = inverse_std / width * (
                    width * normalized_grad
                    - normalized_grad.sum(axis=-1, keepdims=True)
                    - normalized * (normalized_grad * normalized).sum(axis=-1, keepdims=True))
            return input_grad, (grad * normalized).sum(axis=0), grad.sum(axis=0)

        return TensorOps.record(normalized * gain_data + shift.data, [x, gain, shift], backward)

    @staticmethod
    def dropout(x: Tensor, rate, rng, train_flag) -> Tensor:
        if not train_flag or rate == 0:
            return x
        mask = ((rng.random(x.shape) >= rate) / (1.0 - rate)).astype(x.data.dtype)
        return TensorOps.record(x.data * mask, [x], lambda grad: (grad * mask,))

    @staticmethod
    def softmax(x: Tensor) -> Tensor:
        probabilities = special.softmax(x.data, axis=-1)

        def backward(grad):
            return probabilities * (grad - (grad * probabilities).sum(axis=-1, keepdims=True)),

        return TensorOps.record(probabilities, [x], backward)

    @staticmethod
    def log_softmax(x: Tensor) -> Tensor:
        log_probabilities = special.log_softmax(x.data, axis=-1)

        def backward(grad):
            return grad - np.exp(log_probabilities) * grad.sum(axis=-1, keepdims=True),

        return TensorOps.record(log_probabilities, [x], backward)

    @staticmethod
    def cross_entropy_loss(logits: Tensor, labels) -> Tensor:
        if logits.data.ndim != 2:
            raise DimensionError(f"cross_entropy_loss needs [n x C] logits, got shape {logits.shape}")
        count, number_of_classes = logits.shape
        labels = np.asarray(labels, dtype=np.int64)
        if count < 1:
            raise ValidationError("cross_entropy_loss needs at least one row")
        if labels.shape != (count,):
            raise DimensionError(f"{labels.shape[0] if labels.ndim else 0} labels for {count} rows")
        for index, label in enumerate(labels):
            if label < 0 or label >= number_of_classes:
                raise ValidationError(f"label {label} at index {index} outside [0, {number_of_classes})")

        log_probabilities = special.log_softmax(logits.data, axis=-1)
        rows = np.arange(count)
        loss = -log_probabilities[rows, labels].mean()

        def backward(grad):
            logits_grad = np.exp(log_probabilities)
            logits_grad[rows, labels] -= 1.0
            return logits_grad * (grad / count),

        return TensorOps.record(np.array(loss, dtype=logits.data.dtype), [logits], backward)

    @staticmethod
    def bilinear(heads: Tensor, tails: Tensor, weight: Tensor, bias: Tensor = None) -> Tensor:
        """logits[p, c] = heads[p] . weight[c] . tails[p] (+ bias[c]) for a batch of pairs."""
        if heads.data.ndim != 2 or heads.shape != tails.shape:
            raise DimensionError(f"bilinear pair shapes differ: {heads.shape} vs {tails.shape}")
        number_of_classes, width, width_out = weight.shape
        if heads.shape[1] != width or width != width_out:
            raise DimensionError(f"bilinear weight {weight.shape} does not match pairs {heads.shape}")
        if bias is not None and bias.shape != (number_of_classes,):
            raise DimensionError(f"bilinear bias {bias.shape} does not match {number_of_classes} classes")

        count = heads.shape[0]
        head_data, tail_data = heads.data, tails.data
        stacked_weight = weight.data.transpose(1, 0, 2).reshape(width, number_of_classes * width)
        projected = (head_data @ stacked_weight).reshape(count, number_of_classes, width)
        logits = (projected * tail_data[:, np.newaxis, :]).sum(axis=-1)
        if bias is not None:
            logits = logits + bias.data

        def backward(grad):
            projected_grad = grad[:, :, np.newaxis] * tail_data[:, np.newaxis, :]
            tail_grad = (grad[:, :, np.newaxis] * projected).sum(axis=1)
            flat_grad = projected_grad.reshape(count, number_of_classes * width)
            head_grad = flat_grad @ stacked_weight.T
            weight_grad = (head_data.T @ flat_grad).reshape(width, number_of_classes, width).transpose(1, 0, 2)
            grads = [head_grad, tail_grad, weight_grad]
            if bias is not None:
                grads.append(grad.sum(axis=0))
            return tuple(grads)

        inputs = [heads, tails, weight] + ([bias] if bias is not None else [])
        return TensorOps.record(logits, inputs, backward)
