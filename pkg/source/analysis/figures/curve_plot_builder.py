import matplotlib

matplotlib.use('Agg')

import matplotlib.pyplot as plt
from matplotlib import font_manager

from source.analysis.performance.curve_performance_builder import CurvePerformanceBuilder
from source.analysis.setup.system_service import SystemService
from source.constants import Constants


class CurvePlotBuilder(object):

    @staticmethod
    def tidy_plot():
        ax = plt.subplot(111)
        ax.spines['top'].set_visible(False)
        ax.spines['right'].set_visible(False)
        ax.spines['bottom'].set_visible(True)
        ax.spines['left'].set_visible(True)
        ax.yaxis.set_ticks_position('left')
        ax.xaxis.set_ticks_position('bottom')

    @staticmethod
    def build_pr_plot(system_results, documents):
        for system_result in system_results:
            performance = CurvePerformanceBuilder.build_precision_recall(system_result.predictions, documents,
                                                                         label=system_result.system_type.value)
            plt.plot(performance.recalls, performance.precisions,
                     label=SystemService.get_label(system_result.system_type),
                     color=SystemService.get_color(system_result.system_type))

    @staticmethod
    def make_pr_plot(system_results, documents, description=''):
        CurvePlotBuilder.build_pr_plot(system_results, documents)
        CurvePlotBuilder.tidy_plot()
        CurvePlotBuilder.set_labels('Recall', 'Precision', 'Relation extraction on the dev set', (1.0, 1.0))

        Constants.FIGURE_FILE_PATH.mkdir(parents=True, exist_ok=True)
        figure_path = Constants.FIGURE_FILE_PATH.joinpath(description + '_pr.png')
        plt.savefig(str(figure_path))
        plt.close()

        if Constants.VERBOSE:
            print(f"Saved precision-recall figure to {figure_path}")
        return figure_path

    @staticmethod
    def set_labels(x_label_text, y_label_text, title, legend_location):
        font_size = 14
        font = font_manager.FontProperties(style='normal', size=font_size)

        plt.legend(bbox_to_anchor=legend_location, borderaxespad=0., prop=font)
        plt.xlabel(x_label_text, fontsize=font_size)
        plt.ylabel(y_label_text, fontsize=font_size)
        plt.title(title, fontsize=18, fontweight='bold')
