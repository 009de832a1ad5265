import os
import sys
import threading
import time
from typing import Dict

from os.path import join as opj
from os.path import isfile, expandvars, dirname

from .errors import VertiError
from .settings import Settings

__all__ = ['init', 'finish', 'log', 'config']

config = Settings()
config.init = False

#===========================================================================


def init(config_settings:Dict=None):
    """Initialize the vertisched environment and populate the global ``config``.

    The defaults file ``vertisched_defaults`` is executed as a Python script with ``config`` in scope. The following locations are searched, in order of precedence:

    *   If ``$VERTISCHEDDEFAULTS`` is in your environment and points to a file, this file is used.
    *   Otherwise ``../vertisched_defaults`` relative to the current file (``functions.py``) is used. If it is not found there, an exception is raised.

    Optionally, an additional `dict` (or |Settings| instance) can be passed as *config_settings*. It is used to update the values coming from the defaults file, which is how the command line flags reach the scheduler and the simulator.

    Library functions never require :func:`init`: every entry point accepts explicit option objects. Without :func:`init` the :func:`log` function stays silent.
    """
    if config.init == True:
        config.update(config_settings or {})
        return

    if 'VERTISCHEDDEFAULTS' in os.environ and isfile(expandvars('$VERTISCHEDDEFAULTS')):
        defaults = expandvars('$VERTISCHEDDEFAULTS')
    else:
        defaults = opj(dirname(dirname(__file__)), 'vertisched_defaults')
        if not isfile(defaults):
            raise VertiError('vertisched_defaults not found, please set VERTISCHEDDEFAULTS in your environment')
    with open(defaults, 'r') as f:
        exec(compile(f.read(), defaults, 'exec'))

    config.update(config_settings or {})

    log('Running vertisched located in {}'.format(dirname(dirname(__file__))), 5)
    log('Using Python {}.{}.{} located in {}'.format(*sys.version_info[:3], sys.executable), 5)
    log('Defaults were loaded from {}'.format(defaults), 5)

    try:
        import dill
    except ImportError:
        log('WARNING: importing dill package failed. Falling back to the default pickle module. Expect problems with pickling', 1)

    config.init = True


#===========================================================================


def finish():
    """Forget the loaded defaults. A subsequent :func:`init` reads the defaults file again."""
    if config.init == False:
        return
    log('vertisched run finished', 5)
    for key in list(config.keys()):
        del config[key]
    config.init = False


#===========================================================================


_stdlock = threading.Lock()
_filelock = threading.Lock()

def log(message, level=0):
    """Log *message* with verbosity *level*.

    Logs are printed independently to the standard output and to the text file named by ``config.log.logfile`` (if any). If *level* is equal or lower than verbosity (defined by ``config.log.stdout`` or ``config.log.file``) the message is printed. Date and/or time can be added based on ``config.log.date`` and ``config.log.time``. All logging activity is thread safe.

    Levels used throughout the package: 1 for errors reported by the command line tool, 3 for warnings (dropped or born-infeasible demands, expired search budgets), 5 for scheduling decisions and 7 for search statistics.
    """
    if 'log' in config:
        if level <= config.log.file or level <= config.log.stdout:
            message = str(message)
            prefix = ''
            if config.log.date:
                prefix += '%d.%m|'
            if config.log.time:
                prefix += '%H:%M:%S'
            if prefix:
                prefix = '[' + prefix.rstrip('|') + '] '
                message = time.strftime(prefix) + message
            if level <= config.log.stdout:
                with _stdlock:
                    print(message)
            logfile = config.log.value('logfile', None)
            if level <= config.log.file and logfile:
                with _filelock, open(logfile, 'a') as f:
                    f.write(message + '\n')
