from numpy import ndarray


class PrecisionRecallPerformance(object):

    def __init__(self, recalls: ndarray, precisions: ndarray, label=''):
        self.recalls = recalls
        self.precisions = precisions
        self.label = label
