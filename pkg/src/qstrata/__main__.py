from qstrata.cli import entry

entry()
