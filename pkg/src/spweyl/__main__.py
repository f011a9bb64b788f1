from spweyl.cli import main

main()
