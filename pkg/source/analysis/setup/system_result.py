from source.analysis.performance.eval_report import EvalReport
from source.analysis.setup.system_type import SystemType


class SystemResult(object):
    def __init__(self, system_type: SystemType, report: EvalReport, predictions, bundles):
        self.system_type = system_type
        self.report = report
        self.predictions = predictions
        self.bundles = bundles
