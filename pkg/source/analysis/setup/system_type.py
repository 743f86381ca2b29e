from enum import Enum


class SystemType(Enum):
    joint = "joint"
    two_step = "two-step"
    sentence_scope = "sentence-scope"
