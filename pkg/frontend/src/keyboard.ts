// Keyboard shortcuts for the review queue.

export type KeyAction =
  | { kind: 'accept' }
  | { kind: 'reject' }
  | { kind: 'start-edit' }
  | { kind: 'move'; delta: number }
  | { kind: 'none' };

export function actionForKey(key: string, editing: boolean): KeyAction {
  if (editing) return { kind: 'none' }; // the picker owns the keyboard
  switch (key) {
    case 'a':
      return { kind: 'accept' };
    case 'r':
      return { kind: 'reject' };
    case 'e':
      return { kind: 'start-edit' };
    case 'j':
    case 'n':
    case 'ArrowDown':
      return { kind: 'move', delta: 1 };
    case 'k':
    case 'p':
    case 'ArrowUp':
      return { kind: 'move', delta: -1 };
    default:
      return { kind: 'none' };
  }
}
