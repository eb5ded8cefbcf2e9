from . import config, logs
