import sys
import os

# Ensure src is in pythonpath so we can import our modules
sys.path.append(os.path.join(os.getcwd(), 'src'))

from crepant.cli import dispatch

def main():
    sys.exit(dispatch(sys.argv[1:]))

if __name__ == "__main__":
    main()
