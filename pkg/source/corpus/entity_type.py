from enum import Enum


class EntityType(Enum):
    person = 'PER'
    location = 'LOC'
    organization = 'ORG'
    time = 'TIME'
    number = 'NUM'
    miscellaneous = 'MISC'
