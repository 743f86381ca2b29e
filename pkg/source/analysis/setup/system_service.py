import seaborn as sns

from source.analysis.setup.system_type import SystemType


class SystemService(object):

    @staticmethod
    def get_label(system_type: SystemType):
        if system_type == SystemType.joint:
            return 'Joint (one step)'
        if system_type == SystemType.two_step:
            return 'Two-step'
        if system_type == SystemType.sentence_scope:
            return 'Sentence-scoped'

    @staticmethod
    def get_color(system_type: SystemType):
        if system_type == SystemType.joint:
            return sns.xkcd_rgb["denim blue"]
        if system_type == SystemType.two_step:
            return sns.xkcd_rgb["medium pink"]
        if system_type == SystemType.sentence_scope:
            return sns.xkcd_rgb["medium green"]
