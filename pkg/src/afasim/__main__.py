"""
afasim main program

see afasim.cli for the commands
"""
import afasim.cli

if __name__ == "__main__":
    afasim.cli.main()
