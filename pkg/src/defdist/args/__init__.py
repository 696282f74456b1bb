from defdist.args.parser import Parser
