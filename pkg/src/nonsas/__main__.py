from nonsas.cli import entry

entry()
