from . import api
from . import report

__all__ = ['api', 'report']
