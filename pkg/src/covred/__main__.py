from covred.cli import main

main()
