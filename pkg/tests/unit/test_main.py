#!/usr/bin/env python3
# ruff: noqa: S101
"""
__main__.py のユニットテスト
"""

import importlib
import sys
import unittest.mock


class TestMainModule:
    """__main__ モジュールのテスト"""

    def test_main_function_exists(self):
        """main 関数が存在することを確認"""
        from levrecon.__main__ import main

        assert callable(main)

    def test_main_calls_cli_main(self):
        """main 関数が cli の main を呼び出すことを確認"""
        modules_to_remove = [key for key in sys.modules if key.startswith("levrecon")]
        for mod in modules_to_remove:
            del sys.modules[mod]

        with unittest.mock.patch("levrecon.cli.levrecon.main") as mock_cli_main:
            import levrecon.__main__

            importlib.reload(levrecon.__main__)
            levrecon.__main__.main()

            mock_cli_main.assert_called_once()
