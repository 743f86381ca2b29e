import threading
from contextlib import contextmanager

import numpy as np

from source.errors import ContractError


class TapeEntry(object):
    __slots__ = ('inputs', 'output', 'backward_rule')

    def __init__(self, inputs, output, backward_rule):
        self.inputs = inputs
        self.output = output
        self.backward_rule = backward_rule


class ComputeTape(object):
    """Ordered record of taped operations for the current thread.

    Entries are appended in execution order, so every entry's inputs were produced by
    earlier entries (or are leaves); backward walks them in exact reverse order.
    """

    _local = threading.local()

    def __init__(self):
        self.entries = []

    @staticmethod
    def current():
        tape = getattr(ComputeTape._local, 'tape', None)
        if tape is None:
            tape = ComputeTape()
            ComputeTape._local.tape = tape
        return tape

    @staticmethod
    def is_recording():
        return getattr(ComputeTape._local, 'recording', True)

    @staticmethod
    @contextmanager
    def no_grad():
        previous = ComputeTape.is_recording()
        ComputeTape._local.recording = False
        try:
            yield
        finally:
            ComputeTape._local.recording = previous

    def record(self, output, inputs, backward_rule):
        self.entries.append(TapeEntry(inputs, output, backward_rule))

    def clear(self):
        self.entries = []

    def __len__(self):
        return len(self.entries)

    @staticmethod
    def backward(loss):
        if loss.size != 1:
            raise ContractError(f"backward needs a scalar loss, got shape {loss.shape}")
        if not loss.requires_grad:
            raise ContractError("backward called on a loss that does not depend on any trainable tensor")

        tape = ComputeTape.current()
        seed_grad = np.ones_like(loss.data)

        if loss.is_leaf:
            loss.accumulate_grad(seed_grad)
            tape.clear()
            return

        pending = {id(loss): seed_grad}
        for entry in reversed(tape.entries):
            grad_output = pending.pop(id(entry.output), None)
            if grad_output is None:
                continue

            input_grads = entry.backward_rule(grad_output)
            for tensor, grad in zip(entry.inputs, input_grads):
                if grad is None or not tensor.requires_grad:
                    continue
                if tensor.is_leaf:
                    tensor.accumulate_grad(grad)
                else:
                    key = id(tensor)
                    pending[key] = pending[key] + grad if key in pending else grad

        tape.clear()
