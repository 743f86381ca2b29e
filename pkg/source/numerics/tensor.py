import numpy as np

from source.numerics.precision import Precision


class Tensor(object):
    """Dense real array with optional gradient accumulation.

    Tensors built by user code are leaves; tensors produced by TensorOps while the
    tape is recording are interior nodes and never hold a grad of their own.
    """

    def __init__(self, data, requires_grad=False, dtype=None):
        self.data = np.array(data, dtype=dtype if dtype is not None else Precision.current())
        self.requires_grad = requires_grad
        self.grad = None
        self.is_leaf = True

    @staticmethod
    def from_array(array):
        tensor = Tensor.__new__(Tensor)
        tensor.data = array
        tensor.requires_grad = False
        tensor.grad = None
        tensor.is_leaf = True
        return tensor

    @property
    def shape(self):
        return self.data.shape

    @property
    def size(self):
        return self.data.size

    def item(self):
        return float(self.data.reshape(-1)[0])

    def numpy(self):
        return self.data

    def accumulate_grad(self, grad):
        grad = np.reshape(grad, self.data.shape).astype(self.data.dtype)
        if self.grad is None:
            self.grad = grad.copy()
        else:
            self.grad = self.grad + grad

    def zero_grad(self):
        self.grad = np.zeros_like(self.data)

    def __repr__(self):
        return f"Tensor(shape={self.shape}, dtype={self.data.dtype}, requires_grad={self.requires_grad})"


class Parameter(Tensor):

    def __init__(self, data, name, dtype=None):
        super().__init__(data, requires_grad=True, dtype=dtype)
        self.name = name
        self.first_moment = np.zeros_like(self.data)
        self.second_moment = np.zeros_like(self.data)
        self.step_count = 0

    def cast(self, dtype):
        self.data = self.data.astype(dtype)
        self.first_moment = self.first_moment.astype(dtype)
        self.second_moment = self.second_moment.astype(dtype)
        if self.grad is not None:
            self.grad = self.grad.astype(dtype)

    def __repr__(self):
        return f"Parameter({self.name!r}, shape={self.shape}, step={self.step_count})"
