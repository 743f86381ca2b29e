import json


class EvalReport(object):
    def __init__(self, true_positives, false_positives, false_negatives, precision, recall, f1, auc,
                 step2_accuracy=None, relation_breakdown=None):
        self.true_positives = true_positives
        self.false_positives = false_positives
        self.false_negatives = false_negatives
        self.precision = precision
        self.recall = recall
        self.f1 = f1
        self.auc = auc
        self.step2_accuracy = step2_accuracy
        self.relation_breakdown = relation_breakdown

    def to_dictionary(self):
        breakdown = [] if self.relation_breakdown is None \
            else json.loads(self.relation_breakdown.to_json(orient='records'))
        return {'true_positives': self.true_positives,
                'false_positives': self.false_positives,
                'false_negatives': self.false_negatives,
                'precision': self.precision,
                'recall': self.recall,
                'f1': self.f1,
                'auc': self.auc,
                'step2_accuracy': self.step2_accuracy,
                'relations': breakdown}

    def __str__(self):
        lines = [f"TP {self.true_positives}  FP {self.false_positives}  FN {self.false_negatives}",
                 f"precision {self.precision:.4f}  recall {self.recall:.4f}  F1 {self.f1:.4f}  AUC {self.auc:.4f}"]
        if self.step2_accuracy is not None:
            lines.append(f"step-2 accuracy {self.step2_accuracy:.4f}")
        return '\n'.join(lines)
