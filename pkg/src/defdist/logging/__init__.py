from defdist.logging.logger import Logger
