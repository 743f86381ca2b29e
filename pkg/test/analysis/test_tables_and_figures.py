from source.analysis.figures.curve_plot_builder import CurvePlotBuilder
from source.analysis.performance.performance_builder import PerformanceBuilder
from source.analysis.prediction.prediction_record import PredictionRecord
from source.analysis.setup.system_result import SystemResult
from source.analysis.setup.system_service import SystemService
from source.analysis.setup.system_type import SystemType
from source.analysis.tables.table_builder import TableBuilder
from source.constants import Constants
from source.corpus.corpus_stats import CorpusStatsBuilder


def make_results(documents):
    title = documents[0].title
    gold = documents[0].gold_labels[0]
    hit = PredictionRecord(title, gold.head_idx, gold.tail_idx, gold.relation_id, 0.9)
    miss = PredictionRecord(title, gold.tail_idx, gold.head_idx, gold.relation_id, 0.4)

    joint = SystemResult(SystemType.joint, PerformanceBuilder.micro_f1([hit, miss], documents), [hit, miss], [])
    two_step = SystemResult(SystemType.two_step, PerformanceBuilder.micro_f1([hit], documents, step2_accuracy=0.875),
                            [hit], [])
    return [joint, two_step]


class TestSystemService:

    def test_every_system_has_a_label_and_color(self):
        for system_type in SystemType:
            assert SystemService.get_label(system_type)
            assert SystemService.get_color(system_type).startswith('#')


class TestTableBuilder:

    def test_comparison_table_lists_each_system(self, synthetic_documents, capsys):
        table = TableBuilder.print_table_comparison(make_results(synthetic_documents))

        assert 'Joint (one step)' in table
        assert 'Two-step' in table
        assert '0.875' in table
        assert ' -- ' in table
        assert table in capsys.readouterr().out

    def test_ablation_table_reports_f1_and_auc(self, synthetic_documents):
        results = make_results(synthetic_documents)
        results[1].system_type = SystemType.sentence_scope
        table = TableBuilder.print_table_ablation(results)
        assert 'Sentence-scoped' in table
        assert str(round(100 * results[0].report.auc, 2)) in table

    def test_corpus_stats_table(self, synthetic_documents):
        table = TableBuilder.print_table_corpus_stats({'train': CorpusStatsBuilder.corpus_stats(synthetic_documents)})
        assert '\\hline train & 6 & ' in table


class TestCurvePlotBuilder:

    def test_writes_the_precision_recall_figure(self, synthetic_documents):
        path = CurvePlotBuilder.make_pr_plot(make_results(synthetic_documents), synthetic_documents, 'comparison')
        assert path == Constants.FIGURE_FILE_PATH.joinpath('comparison_pr.png')
        assert path.exists()
