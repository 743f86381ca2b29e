import threading
from contextlib import contextmanager

import numpy as np


class Precision(object):
    STANDARD = np.float32
    WIDE = np.float64

    _local = threading.local()

    @staticmethod
    def current():
        return getattr(Precision._local, 'dtype', Precision.STANDARD)

    @staticmethod
    @contextmanager
    def use(dtype):
        previous = Precision.current()
        Precision._local.dtype = dtype
        try:
            yield
        finally:
            Precision._local.dtype = previous

    @staticmethod
    def wide():
        return Precision.use(Precision.WIDE)

    @staticmethod
    def standard():
        return Precision.use(Precision.STANDARD)
