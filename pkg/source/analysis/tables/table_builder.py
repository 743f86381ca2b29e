from source.analysis.setup.system_service import SystemService


class TableBuilder(object):

    @staticmethod
    def print_table_corpus_stats(stats_by_split):
        frontmatter = '\\begin{table} \\caption{Statistics of the annotated DocRED splits} ' \
                      '\\begin{tabular}{l*{4}{c}} & Documents & Relation types & Instances & Entities \\\\ '
        rows = []
        for split_name, stats in stats_by_split.items():
            rows.append('\\hline ' + split_name + ' & ' +
                        f"{stats.documents:,}" + ' & ' +
                        str(stats.relation_types) + ' & ' +
                        f"{stats.instances:,}" + ' & ' +
                        f"{stats.entities:,}" + ' \\\\')
        backmatter = '\\hline \\end{tabular} \\label{tab:statistics} \\end{table}'

        return TableBuilder.emit([frontmatter] + rows + [backmatter])

    @staticmethod
    def print_table_comparison(system_results):
        frontmatter = '\\begin{table} \\caption{One-step and two-step relation extraction} ' \
                      '\\begin{tabular}{l*{4}{c}} Model & Precision & Recall & $F_1$ & Step-2 accuracy \\\\ '
        rows = []
        for system_result in system_results:
            report = system_result.report
            step2 = '--' if report.step2_accuracy is None else str(round(report.step2_accuracy, 3))
            rows.append('\\hline ' + SystemService.get_label(system_result.system_type) + ' & ' +
                        str(round(report.precision, 3)) + ' & ' +
                        str(round(report.recall, 3)) + ' & ' +
                        str(round(100 * report.f1, 2)) + ' & ' +
                        step2 + ' \\\\')
        backmatter = '\\hline \\end{tabular} \\label{tab:two_step} \\small \\vspace{.2cm} ' \
                     '\\caption*{$F_1$ in percent on the dev set.} \\end{table}'

        return TableBuilder.emit([frontmatter] + rows + [backmatter])

    @staticmethod
    def print_table_ablation(system_results):
        frontmatter = '\\begin{table} \\caption{Document-level and sentence-scoped encoding} ' \
                      '\\begin{tabular}{l*{2}{c}} Model & $F_1$ & AUC \\\\ '
        rows = []
        for system_result in system_results:
            report = system_result.report
            rows.append('\\hline ' + SystemService.get_label(system_result.system_type) + ' & ' +
                        str(round(100 * report.f1, 2)) + ' & ' +
                        str(round(100 * report.auc, 2)) + ' \\\\')
        backmatter = '\\hline \\end{tabular} \\label{tab:sentence_scope} \\small \\vspace{.2cm} ' \
                     '\\caption*{$F_1$ and AUC in percent on the dev set.} \\end{table}'

        return TableBuilder.emit([frontmatter] + rows + [backmatter])

    @staticmethod
    def emit(lines):
        table = '\n'.join(lines)
        print(table)
        return table
