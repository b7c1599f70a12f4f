from boundscramble.cli import main

raise SystemExit(main())
