from collections import OrderedDict

from source.numerics.tensor import Parameter


class ParameterStore(object):
    """Named Parameters in creation order."""

    def __init__(self, parameters):
        self.parameters = OrderedDict((parameter.name, parameter) for parameter in parameters)

    def __getitem__(self, name):
        return self.parameters[name]

    def __contains__(self, name):
        return name in self.parameters

    def __iter__(self):
        return iter(self.parameters.values())

    def __len__(self):
        return len(self.parameters)

    def to_arrays(self):
        return OrderedDict((name, parameter.data.copy()) for name, parameter in self.parameters.items())

    @classmethod
    def from_arrays(cls, arrays):
        return cls([Parameter(array, name=name, dtype=array.dtype) for name, array in arrays.items()])
