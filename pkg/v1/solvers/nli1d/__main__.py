from nli1d.cli import main

raise SystemExit(main())
