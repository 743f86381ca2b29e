import numpy as np

from source import utils
from source.constants import Constants
from source.errors import DeterminismError
from source.numerics.compute_tape import ComputeTape
from source.numerics.precision import Precision


class GradCheckEntry(object):
    def __init__(self, name, max_relative_error, coordinates_checked, threshold):
        self.name = name
        self.max_relative_error = max_relative_error
        self.coordinates_checked = coordinates_checked
        self.passed = max_relative_error < threshold

    def to_dictionary(self):
        return {'name': self.name,
                'max_relative_error': self.max_relative_error,
                'coordinates_checked': self.coordinates_checked,
                'passed': self.passed}


class GradCheckReport(object):
    def __init__(self, label, entries, threshold):
        self.label = label
        self.entries = entries
        self.threshold = threshold

    @property
    def passed(self):
        return all(entry.passed for entry in self.entries)

    @property
    def failing_parameters(self):
        return [entry.name for entry in self.entries if not entry.passed]

    def to_dictionary(self):
        return {'label': self.label,
                'threshold': self.threshold,
                'passed': self.passed,
                'parameters': [entry.to_dictionary() for entry in self.entries]}

    def __str__(self):
        lines = [f"{self.label}: {'pass' if self.passed else 'FAIL'} (threshold {self.threshold:g})"]
        for entry in self.entries:
            status = 'ok' if entry.passed else 'FAIL'
            lines.append(f"  {entry.name:<32} {entry.max_relative_error:.3e}  {status}")
        return '\n'.join(lines)


class GradientChecker(object):
    # Below this magnitude gradients are compared on absolute error.
    RELATIVE_ERROR_FLOOR = 1e-4

    @staticmethod
    def grad_check(fragment, parameters, label='fragment', wide=True, threshold=None, epsilon=None,
                   max_coordinates=None, seed=0):
        """Compare taped gradients of ``fragment()`` against central finite differences.

        ``fragment`` is a zero-argument callable returning a scalar loss Tensor built from
        ``parameters``. Wide mode runs in float64 with the strict threshold; standard mode
        runs in float32 against the sanity bound.
        """
        if wide:
            dtype = Precision.WIDE
            threshold = Constants.GRAD_CHECK_THRESHOLD if threshold is None else threshold
            epsilon = Constants.FINITE_DIFFERENCE_EPSILON if epsilon is None else epsilon
        else:
            dtype = Precision.STANDARD
            threshold = Constants.GRAD_CHECK_SANITY_THRESHOLD if threshold is None else threshold
            epsilon = 1e-2 if epsilon is None else epsilon

        parameters = list(parameters)
        original_dtypes = [parameter.data.dtype for parameter in parameters]
        rng = utils.make_rng(seed)

        try:
            with Precision.use(dtype):
                for parameter in parameters:
                    parameter.cast(dtype)
                    parameter.grad = None

                with ComputeTape.no_grad():
                    first = fragment().data
                    second = fragment().data
                if not np.array_equal(first, second):
                    raise DeterminismError(f"{label}: two forward passes disagree ({first} vs {second})")

                ComputeTape.current().clear()
                for parameter in parameters:
                    parameter.zero_grad()
                ComputeTape.backward(fragment())

                entries = []
                for parameter in parameters:
                    analytic = parameter.grad.reshape(-1).copy()
                    coordinates = GradientChecker.choose_coordinates(parameter.size, max_coordinates, rng)
                    worst = GradientChecker.check_parameter(fragment, parameter, analytic, coordinates, epsilon)
                    entries.append(GradCheckEntry(parameter.name, worst, len(coordinates), threshold))
        finally:
            ComputeTape.current().clear()
            for parameter, original in zip(parameters, original_dtypes):
                parameter.cast(original)
                parameter.grad = None

        return GradCheckReport(label, entries, threshold)

    @staticmethod
    def choose_coordinates(size, max_coordinates, rng):
        if max_coordinates is None or max_coordinates >= size:
            return np.arange(size)
        return np.sort(rng.choice(size, size=max_coordinates, replace=False))

    @staticmethod
    def check_parameter(fragment, parameter, analytic, coordinates, epsilon):
        flat = parameter.data.reshape(-1)
        worst = 0.0

        with ComputeTape.no_grad():
            for index in coordinates:
                original = flat[index]
                flat[index] = original + epsilon
                upper = float(flat[index])
                plus = float(fragment().data)
                flat[index] = original - epsilon
                lower = float(flat[index])
                minus = float(fragment().data)
                flat[index] = original

                numeric = (plus - minus) / (upper - lower)
                worst = max(worst, GradientChecker.relative_error(float(analytic[index]), numeric))

        return worst

    @staticmethod
    def relative_error(analytic, numeric):
        denominator = max(abs(analytic), abs(numeric), GradientChecker.RELATIVE_ERROR_FLOOR)
        return abs(analytic - numeric) / denominator
