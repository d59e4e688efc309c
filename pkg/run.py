"""Entry point for running the photinus MCP server."""

from photinus import __main__

if __name__ == '__main__':
    __main__.main()
