from shadowrca.cli.main import run

run()
