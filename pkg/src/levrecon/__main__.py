#!/usr/bin/env python3
"""levrecon のエントリーポイント。"""

from levrecon.cli.levrecon import main

if __name__ == "__main__":
    main()
